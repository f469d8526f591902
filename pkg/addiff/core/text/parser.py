"""
Recursive-descent parser for the .ad diagram format.

    ad    := "activity" IDENT "{" decl* node* edge* "}"
    decl  := ("input" | "local") IDENT ":" type ";"
    type  := "bool" | INT ".." INT | "enum" "{" IDENT ("," IDENT)* "}"
    node  := ("initial" | "final" | "decision" | "merge" | "fork" | "join") IDENT ";"
           | "action" IDENT STRING ("{" (IDENT "=" expr ";")* "}")? ";"
    edge  := IDENT "->" IDENT ("[" expr "]")? ";"

    expr  := and ("|" and)*
    and   := cmp ("&" cmp)*
    cmp   := arith (("=" | "!=" | "<" | "<=" | ">" | ">=") arith)?
    arith := unary (("+" | "-") unary)*
    unary := "!" unary | atom
    atom  := INT | "-" INT | "true" | "false" | IDENT | "(" expr ")"

A statement that fails to parse is skipped up to the next ";" or "}" so
one pass reports every independent error. Semantic problems (undeclared
variables, arity, typing) are left to validation.
"""

import logging
from typing import Dict, List, Optional, Sequence, Set, Union

from pydantic import ValidationError

from ..models.base import AdParseError
from ..models.diagram import ActivityDiagram, Assignment, Domain, Node, Transition, VarDecl
from ..models.enums import NodeKind, VarKind
from ..models.expr import COMPARISON_OPS, BinOp, Const, EnumLiteral, Expr, Not, Var
from .lexer import EOF, IDENT, INT, STRING, ParseError, SourceSpan, Token, tokenize

logger = logging.getLogger(__name__)

PSEUDO_KEYWORDS = ("initial", "final", "decision", "merge", "fork", "join")
NODE_KEYWORDS = PSEUDO_KEYWORDS + ("action",)


class _Abort(Exception):
    """Unwinds the current statement after an error was recorded"""


class Parser:
    """Parser state for one source text"""

    def __init__(self, text: str):
        self.tokens, self.errors = tokenize(text)
        self.pos = 0
        self.input_vars: List[VarDecl] = []
        self.local_vars: List[VarDecl] = []
        self.nodes: List[Node] = []
        self.transitions: List[Transition] = []
        self.var_names: Set[str] = set()
        self.var_domains: Dict[str, Domain] = {}
        # every enumeration declaring a literal, in declaration order
        self.enum_literals: Dict[str, List[EnumLiteral]] = {}

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def at(self, *kinds: str) -> bool:
        return self.current.kind in kinds

    def advance(self) -> Token:
        token = self.current
        if token.kind != EOF:
            self.pos += 1
        return token

    def fail(self, message: str, expected: Sequence[str] = (), span: Optional[SourceSpan] = None) -> "_Abort":
        self.errors.append(ParseError(span or self.current.span, message, tuple(expected)))
        return _Abort()

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            raise self.fail(f"unexpected {self.current.describe()}", [_describe_kind(kind)])
        return self.advance()

    def synchronize(self) -> None:
        """Skip to just after the next ';' or to the next '}'"""
        while not self.at(EOF, "}"):
            if self.advance().kind == ";":
                return

    # grammar

    def parse(self) -> Union[ActivityDiagram, List[ParseError]]:
        name = "activity"
        try:
            self.expect("activity")
            name = self.expect(IDENT).text
            self.expect("{")
        except _Abort:
            return self._sorted_errors()

        while not self.at("}", EOF):
            try:
                self.statement()
            except _Abort:
                self.synchronize()

        try:
            self.expect("}")
            self.expect(EOF)
        except _Abort:
            pass

        if self.errors:
            return self._sorted_errors()

        try:
            return ActivityDiagram(
                name=name,
                input_vars=tuple(self.input_vars),
                local_vars=tuple(self.local_vars),
                nodes=tuple(self.nodes),
                transitions=tuple(self.transitions),
            )
        except ValidationError as e:
            return [ParseError(SourceSpan(1, 1), f"invalid diagram structure: {e.errors()[0]['msg']}")]

    def _sorted_errors(self) -> List[ParseError]:
        return sorted(self.errors, key=lambda error: (error.span.line, error.span.column))

    def statement(self) -> None:
        if self.at("input", "local"):
            self.declaration()
        elif self.at(*NODE_KEYWORDS):
            self.node()
        elif self.at(IDENT):
            self.edge()
        else:
            raise self.fail(
                f"unexpected {self.current.describe()}",
                ["declaration", "node", "transition", "'}'"],
            )

    def declaration(self) -> None:
        kind = VarKind.INPUT if self.advance().kind == "input" else VarKind.LOCAL
        name = self.expect(IDENT).text
        self.expect(":")
        domain = self.domain()
        self.expect(";")
        decl = VarDecl(name=name, domain=domain, kind=kind)
        (self.input_vars if kind is VarKind.INPUT else self.local_vars).append(decl)
        self.var_names.add(name)
        self.var_domains[name] = domain
        for literal in domain.values() if domain.literals else ():
            candidates = self.enum_literals.setdefault(literal.literal, [])
            if literal not in candidates:
                candidates.append(literal)

    def domain(self) -> Domain:
        if self.at("bool"):
            self.advance()
            return Domain.boolean()
        if self.at("enum"):
            self.advance()
            self.expect("{")
            literals = [self.expect(IDENT).text]
            while self.at(","):
                self.advance()
                literals.append(self.expect(IDENT).text)
            self.expect("}")
            return Domain.enumeration(*literals)
        if self.at(INT, "-"):
            lo = self.signed_int()
            self.expect("..")
            hi = self.signed_int()
            return Domain.integer(lo, hi)
        raise self.fail(f"unexpected {self.current.describe()}", ["'bool'", "integer range", "'enum'"])

    def signed_int(self) -> int:
        negative = False
        if self.at("-"):
            self.advance()
            negative = True
        value = int(self.expect(INT).text)
        return -value if negative else value

    def node(self) -> None:
        keyword = self.advance().kind
        node_id = self.expect(IDENT).text
        if keyword != "action":
            self.expect(";")
            self.nodes.append(Node(id=node_id, kind=NodeKind.normalize(keyword)))
            return

        action_name = self.expect(STRING).text
        assignments: List[Assignment] = []
        if self.at("{"):
            self.advance()
            while self.at(IDENT):
                var = self.advance().text
                self.expect("=")
                expr = self.bind_literal(self.expression(), Var(var))
                self.expect(";")
                assignments.append(Assignment(var=var, expr=expr))
            self.expect("}")
        self.expect(";")
        self.nodes.append(
            Node(id=node_id, kind=NodeKind.ACTION, action_name=action_name, assignments=tuple(assignments))
        )

    def edge(self) -> None:
        src = self.advance().text
        self.expect("->")
        trg = self.expect(IDENT).text
        if self.at("["):
            self.advance()
            guard = self.expression()
            self.expect("]")
            self.expect(";")
            self.transitions.append(Transition(src=src, trg=trg, guard=guard))
            return
        self.expect(";")
        self.transitions.append(Transition(src=src, trg=trg))

    # expressions

    def expression(self) -> Expr:
        expr = self.conjunction()
        while self.at("|"):
            self.advance()
            expr = BinOp("|", expr, self.conjunction())
        return expr

    def conjunction(self) -> Expr:
        expr = self.comparison()
        while self.at("&"):
            self.advance()
            expr = BinOp("&", expr, self.comparison())
        return expr

    def comparison(self) -> Expr:
        expr = self.arithmetic()
        if self.at(*COMPARISON_OPS):
            op = self.advance().kind
            right = self.arithmetic()
            expr = BinOp(op, self.bind_literal(expr, right), self.bind_literal(right, expr))
        return expr

    def arithmetic(self) -> Expr:
        expr = self.unary()
        while self.at("+", "-"):
            op = self.advance().kind
            expr = BinOp(op, expr, self.unary())
        return expr

    def unary(self) -> Expr:
        if self.at("!"):
            self.advance()
            return Not(self.unary())
        return self.atom()

    def bind_literal(self, expr: Expr, other: Expr) -> Expr:
        """
        Rebind a bare enumeration literal to the enumeration of the variable it meets.

        A literal shared by several enumerations first resolves to the earliest
        declaration; compared with or assigned to a variable it takes that
        variable's enumeration when the variable declares it.
        """
        if not (isinstance(expr, Const) and isinstance(expr.value, EnumLiteral) and isinstance(other, Var)):
            return expr
        domain = self.var_domains.get(other.name)
        if domain is None:
            return expr
        for candidate in self.enum_literals.get(expr.value.literal, ()):
            if candidate.literals == domain.literals:
                return Const(candidate)
        return expr

    def atom(self) -> Expr:
        token = self.current
        if token.kind == INT:
            self.advance()
            return Const(int(token.text))
        if token.kind == "-" and self.peek().kind == INT:
            self.advance()
            return Const(-int(self.advance().text))
        if token.kind in ("true", "false"):
            self.advance()
            return Const(token.kind == "true")
        if token.kind == IDENT:
            self.advance()
            if token.text not in self.var_names and token.text in self.enum_literals:
                return Const(self.enum_literals[token.text][0])
            return Var(token.text)
        if token.kind == "(":
            self.advance()
            expr = self.expression()
            self.expect(")")
            return expr
        raise self.fail(f"unexpected {token.describe()}", ["expression"])


def _describe_kind(kind: str) -> str:
    if kind in (IDENT, INT, STRING):
        return {IDENT: "identifier", INT: "integer", STRING: "string"}[kind]
    if kind == EOF:
        return "end of input"
    return f"'{kind}'"


def parse(text: str) -> Union[ActivityDiagram, List[ParseError]]:
    """
    Parse a diagram text.

    Args:
        text: Source in the .ad format

    Returns:
        The diagram, or the non-empty list of parse errors ordered by position
    """
    result = Parser(text).parse()
    if isinstance(result, list):
        logger.debug(f"Parse failed with {len(result)} error(s)")
    return result


def parse_or_raise(text: str, source: Optional[str] = None) -> ActivityDiagram:
    """Parse a diagram text, raising AdParseError on failure"""
    result = parse(text)
    if isinstance(result, list):
        raise AdParseError("could not parse diagram", errors=result, source=source)
    return result

