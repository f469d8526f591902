"""
Guard and assignment expressions over finite domains.

Expressions are immutable trees of Const, Var, Not and BinOp nodes.
Values are Python bools, Python ints and EnumLiteral instances; every
literal carries the tuple of literals of its enumeration so literals of
different enumerations never compare equal.
"""

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from .base import Diagnostic, ExpressionError
from .enums import DomainKind, Rule


@dataclass(frozen=True, order=True)
class EnumLiteral:
    """A literal of an enumeration domain, ordered by declaration index"""

    index: int
    literal: str
    literals: Tuple[str, ...]

    def __str__(self) -> str:
        return self.literal


Value = Union[bool, int, EnumLiteral]


@dataclass(frozen=True)
class ExprType:
    """Static type of an expression: bool, int or a specific enumeration"""

    kind: DomainKind
    literals: Tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.kind is DomainKind.ENUM:
            return "enum{" + ", ".join(self.literals) + "}"
        return self.kind.value


BOOL_TYPE = ExprType(DomainKind.BOOL)
INT_TYPE = ExprType(DomainKind.INT)


def value_type(value: Value) -> ExprType:
    if isinstance(value, bool):
        return BOOL_TYPE
    if isinstance(value, int):
        return INT_TYPE
    if isinstance(value, EnumLiteral):
        return ExprType(DomainKind.ENUM, value.literals)
    raise ExpressionError(f"Unsupported value {value!r}")


def value_sort_key(value: Value) -> Tuple[int, int]:
    """Canonical order: False < True, integers numerically, literals by index."""
    if isinstance(value, bool):
        return (0, int(value))
    if isinstance(value, int):
        return (1, value)
    return (2, value.index)


def format_value(value: Value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass(frozen=True)
class Expr:
    """Base class of expression nodes"""

    def __str__(self) -> str:
        return format_expr(self)


@dataclass(frozen=True)
class Const(Expr):
    value: Value


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


TRUE = Const(True)
FALSE = Const(False)

LOGICAL_OPS = ("&", "|")
ARITHMETIC_OPS = ("+", "-")
EQUALITY_OPS = ("=", "!=")
ORDER_OPS = ("<", "<=", ">", ">=")
COMPARISON_OPS = EQUALITY_OPS + ORDER_OPS
BINARY_OPS = LOGICAL_OPS + ARITHMETIC_OPS + COMPARISON_OPS

# binding strength, higher binds tighter
PRECEDENCE: Dict[str, int] = {"|": 1, "&": 2, "+": 4, "-": 4}
PRECEDENCE.update({op: 3 for op in COMPARISON_OPS})
NOT_PRECEDENCE = 5
ATOM_PRECEDENCE = 6


def precedence(expr: Expr) -> int:
    if isinstance(expr, BinOp):
        return PRECEDENCE[expr.op]
    if isinstance(expr, Not):
        return NOT_PRECEDENCE
    if isinstance(expr, Const) and isinstance(expr.value, int) and not isinstance(expr.value, bool) and expr.value < 0:
        # a negative literal reads as a unary minus
        return NOT_PRECEDENCE
    return ATOM_PRECEDENCE


def format_expr(expr: Expr) -> str:
    """
    Render an expression in the concrete syntax with minimal parentheses.

    Left operands are parenthesized when they bind looser than the operator,
    right operands also when they bind equally (operators associate to the
    left), and comparison operands whenever they are comparisons themselves.
    """
    if isinstance(expr, Const):
        return format_value(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Not):
        inner = format_expr(expr.operand)
        if precedence(expr.operand) < NOT_PRECEDENCE:
            inner = f"({inner})"
        return f"!{inner}"
    if isinstance(expr, BinOp):
        level = PRECEDENCE[expr.op]
        left = format_expr(expr.left)
        right = format_expr(expr.right)
        left_level = precedence(expr.left)
        right_level = precedence(expr.right)
        if left_level < level or (level == 3 and left_level == 3):
            left = f"({left})"
        if right_level <= level:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    raise ExpressionError(f"Unknown expression node {expr!r}")


def free_vars(expr: Expr) -> FrozenSet[str]:
    """Return the set of variable names occurring in an expression"""
    if isinstance(expr, Var):
        return frozenset((expr.name,))
    if isinstance(expr, Not):
        return free_vars(expr.operand)
    if isinstance(expr, BinOp):
        return free_vars(expr.left) | free_vars(expr.right)
    return frozenset()


def apply_op(op: str, left: Value, right: Value) -> Value:
    """
    Apply a binary operator to two values.

    Args:
        op: Operator symbol
        left: Left operand
        right: Right operand

    Returns:
        The resulting value

    Raises:
        ExpressionError: If the operands do not fit the operator
    """
    left_type = value_type(left)
    right_type = value_type(right)

    if op in LOGICAL_OPS:
        if left_type != BOOL_TYPE or right_type != BOOL_TYPE:
            raise ExpressionError(f"'{op}' needs boolean operands, got {left_type} and {right_type}")
        return (left and right) if op == "&" else (left or right)

    if op in ARITHMETIC_OPS:
        if left_type != INT_TYPE or right_type != INT_TYPE:
            raise ExpressionError(f"'{op}' needs integer operands, got {left_type} and {right_type}")
        return left + right if op == "+" else left - right

    if op in COMPARISON_OPS:
        if left_type != right_type:
            raise ExpressionError(f"'{op}' compares {left_type} with {right_type}")
        if op == "=":
            return left == right
        if op == "!=":
            return left != right
        if left_type == BOOL_TYPE:
            raise ExpressionError(f"'{op}' is not defined on booleans")
        left_key = value_sort_key(left)
        right_key = value_sort_key(right)
        if op == "<":
            return left_key < right_key
        if op == "<=":
            return left_key <= right_key
        if op == ">":
            return left_key > right_key
        return left_key >= right_key

    raise ExpressionError(f"Unknown operator '{op}'")


def evaluate(expr: Expr, env: Mapping[str, Value]) -> Value:
    """
    Evaluate an expression strictly under an environment.

    Args:
        expr: Expression to evaluate
        env: Values of (at least) the free variables of expr

    Returns:
        The value of the expression

    Raises:
        ExpressionError: On unbound variables or ill-typed operands
    """
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        try:
            return env[expr.name]
        except KeyError:
            raise ExpressionError(f"Unbound variable '{expr.name}'", format_expr(expr))
    if isinstance(expr, Not):
        operand = evaluate(expr.operand, env)
        if not isinstance(operand, bool):
            raise ExpressionError("'!' needs a boolean operand", format_expr(expr))
        return not operand
    if isinstance(expr, BinOp):
        left = evaluate(expr.left, env)
        right = evaluate(expr.right, env)
        try:
            return apply_op(expr.op, left, right)
        except ExpressionError as e:
            raise ExpressionError(e.message, format_expr(expr))
    raise ExpressionError(f"Unknown expression node {expr!r}")


def _declared_types(decls: Any) -> Dict[str, ExprType]:
    if isinstance(decls, Mapping):
        return dict(decls)
    return {decl.name: decl.domain.value_type for decl in decls}


def type_check(expr: Expr, decls: Union[Mapping[str, ExprType], Iterable[Any]]) -> Union[ExprType, List[Diagnostic]]:
    """
    Infer the type of an expression.

    Args:
        expr: Expression to check
        decls: Variable declarations, or a mapping from names to types

    Returns:
        The expression type, or the list of diagnostics if it is ill-typed
    """
    types = _declared_types(decls)
    diagnostics: List[Diagnostic] = []
    result = _infer(expr, types, diagnostics)
    if diagnostics or result is None:
        return diagnostics
    return result


def _mismatch(expr: Expr, message: str) -> Diagnostic:
    return Diagnostic(Rule.TYPE_MISMATCH, format_expr(expr), message)


def _infer(expr: Expr, types: Dict[str, ExprType], diagnostics: List[Diagnostic]) -> Optional[ExprType]:
    if isinstance(expr, Const):
        return value_type(expr.value)

    if isinstance(expr, Var):
        if expr.name not in types:
            diagnostics.append(
                Diagnostic(Rule.UNDECLARED_VARIABLE, expr.name, f"variable '{expr.name}' is not declared")
            )
            return None
        return types[expr.name]

    if isinstance(expr, Not):
        operand = _infer(expr.operand, types, diagnostics)
        if operand is not None and operand != BOOL_TYPE:
            diagnostics.append(_mismatch(expr, f"'!' needs a boolean operand, got {operand}"))
        return BOOL_TYPE

    if isinstance(expr, BinOp):
        left = _infer(expr.left, types, diagnostics)
        right = _infer(expr.right, types, diagnostics)
        op = expr.op
        if op in LOGICAL_OPS:
            for side in (left, right):
                if side is not None and side != BOOL_TYPE:
                    diagnostics.append(_mismatch(expr, f"'{op}' needs boolean operands, got {side}"))
            return BOOL_TYPE
        if op in ARITHMETIC_OPS:
            for side in (left, right):
                if side is not None and side != INT_TYPE:
                    diagnostics.append(_mismatch(expr, f"'{op}' needs integer operands, got {side}"))
            return INT_TYPE
        if op in COMPARISON_OPS:
            if left is not None and right is not None:
                if left != right:
                    diagnostics.append(_mismatch(expr, f"'{op}' compares {left} with {right}"))
                elif op in ORDER_OPS and left == BOOL_TYPE:
                    diagnostics.append(_mismatch(expr, f"'{op}' is not defined on booleans"))
            return BOOL_TYPE
        diagnostics.append(_mismatch(expr, f"unknown operator '{op}'"))
        return None

    diagnostics.append(_mismatch(expr, "unknown expression node"))
    return None


def conjoin(*exprs: Expr) -> Expr:
    """Left-nested conjunction; the empty conjunction is true"""
    result: Optional[Expr] = None
    for expr in exprs:
        result = expr if result is None else BinOp("&", result, expr)
    return TRUE if result is None else result
