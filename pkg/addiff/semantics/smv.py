"""
SMV module export.

The module has one boolean per resting transition token, enumerated acnode
and ac variables, locals as VAR and inputs as FROZENVAR. Its TRANS relation
is a disjunction of one clause per (action or final node, incoming token,
route) triple, built from the same routes as the symbolic encoding. Final
states have no successor.
"""

import re
from typing import Dict, List, Set

from ..core.models.diagram import ActivityDiagram, Domain, Node
from ..core.models.enums import DomainKind, NodeKind
from ..core.models.expr import BinOp, Const, EnumLiteral, Expr, Not, Var, precedence
from ..core.models.state import FIN_LABEL, INIT_LABEL
from .routing import Route, resting_edges, routes_from

RESERVED = frozenset(
    {
        "MODULE", "VAR", "IVAR", "FROZENVAR", "DEFINE", "ASSIGN", "TRANS", "INIT", "INVAR",
        "SPEC", "LTLSPEC", "CTLSPEC", "FAIRNESS", "init", "next", "case", "esac", "boolean",
        "TRUE", "FALSE", "self", "process", "word", "array", "of", "mod", "in", "union",
        "main", "ac", "acnode",
    }
)


def smv_identifier(text: str, taken: Set[str]) -> str:
    """Turn free text into an SMV identifier not yet in taken."""
    base = re.sub(r"[^A-Za-z0-9_]", "_", text.strip()) or "x"
    if not base[0].isalpha():
        base = "v_" + base
    if base in RESERVED:
        base += "_"
    name, suffix = base, 1
    while name in taken:
        suffix += 1
        name = f"{base}_{suffix}"
    taken.add(name)
    return name


class _Emitter:
    def __init__(self, ad: ActivityDiagram):
        self.ad = ad
        taken: Set[str] = set()
        self.var_names = {decl.name: smv_identifier(decl.name, taken) for decl in ad.variables}
        self.node_values = {
            node.id: smv_identifier(node.id, taken)
            for node in ad.nodes
            if node.kind in (NodeKind.INITIAL, NodeKind.ACTION, NodeKind.FINAL)
        }
        self.labels: Dict[str, str] = {INIT_LABEL: smv_identifier("init_", taken)}
        for node in ad.nodes:
            if node.is_action and node.action_name not in self.labels:
                self.labels[node.action_name] = smv_identifier(node.action_name, taken)
        self.labels[FIN_LABEL] = smv_identifier("fin_", taken)
        self.resting = resting_edges(ad)
        self.tokens = {}
        for edge in self.resting:
            transition = ad.transitions[edge]
            self.tokens[edge] = smv_identifier(f"tok_{transition.src}_{transition.trg}", taken)

    def domain(self, domain: Domain) -> str:
        if domain.kind is DomainKind.BOOL:
            return "boolean"
        if domain.kind is DomainKind.INT:
            return f"{domain.lo}..{domain.hi}"
        return "{" + ", ".join(domain.literals) + "}"

    def expr(self, expr: Expr, primed: bool = False) -> str:
        if isinstance(expr, Const):
            if isinstance(expr.value, bool):
                return "TRUE" if expr.value else "FALSE"
            if isinstance(expr.value, EnumLiteral):
                return expr.value.literal
            return str(expr.value)
        if isinstance(expr, Var):
            name = self.var_names.get(expr.name, expr.name)
            return f"next({name})" if primed else name
        if isinstance(expr, Not):
            return f"!({self.expr(expr.operand, primed)})"
        if isinstance(expr, BinOp):
            left = self.expr(expr.left, primed)
            right = self.expr(expr.right, primed)
            if precedence(expr.left) < 6:
                left = f"({left})"
            if precedence(expr.right) < 6:
                right = f"({right})"
            return f"{left} {expr.op} {right}"
        raise TypeError(f"unknown expression node {expr!r}")

    def frame(self, names: List[str]) -> List[str]:
        return [f"next({name}) = {name}" for name in names]

    def clause(self, node: Node, edge: int, route: Route) -> str:
        conjuncts = [self.tokens[edge]]
        conjuncts += [self.tokens[e] for e in route.present]
        if route.missing:
            conjuncts.append("(" + " | ".join(f"!{self.tokens[e]}" for e in route.missing) + ")")
        conjuncts.append(f"next(acnode) = {self.node_values[node.id]}")
        conjuncts.append(f"next(ac) = {self.labels[node.action_name]}")
        conjuncts += self.frame([self.var_names[d.name] for d in self.ad.input_vars])

        assigned = {a.var: a.expr for a in node.assignments}
        for decl in self.ad.local_vars:
            name = self.var_names[decl.name]
            if decl.name in assigned:
                conjuncts.append(f"next({name}) = ({self.expr(assigned[decl.name])})")
            else:
                conjuncts.append(f"next({name}) = {name}")
        if route.guard != Const(True):
            conjuncts.append(f"({self.expr(route.guard, primed=True)})")

        consumed = {edge} | set(route.consumes)
        for resting in self.resting:
            token = self.tokens[resting]
            if resting in route.emits:
                conjuncts.append(f"next({token})")
            elif resting in consumed:
                conjuncts.append(f"!next({token})")
            else:
                conjuncts.append(f"next({token}) = {token}")
        return "(" + " & ".join(conjuncts) + ")"

    def final_clause(self, node: Node, edge: int) -> str:
        conjuncts = [
            self.tokens[edge],
            f"next(acnode) = {self.node_values[node.id]}",
            f"next(ac) = {self.labels[FIN_LABEL]}",
        ]
        conjuncts += self.frame([self.var_names[d.name] for d in self.ad.variables])
        conjuncts += [f"!next({self.tokens[e]})" for e in self.resting]
        return "(" + " & ".join(conjuncts) + ")"

    def render(self) -> str:
        ad = self.ad
        lines = ["MODULE main", f"-- activity {ad.name}"]

        if ad.input_vars:
            lines.append("FROZENVAR")
            lines += [f"  {self.var_names[d.name]} : {self.domain(d.domain)};" for d in ad.input_vars]

        lines.append("VAR")
        lines += [f"  {self.var_names[d.name]} : {self.domain(d.domain)};" for d in ad.local_vars]
        lines.append("  acnode : {" + ", ".join(self.node_values.values()) + "};")
        lines.append("  ac : {" + ", ".join(self.labels.values()) + "};")
        for edge in self.resting:
            lines.append(f"  {self.tokens[edge]} : boolean; -- {ad.transitions[edge].label}")

        initial = ad.nodes_of_kind(NodeKind.INITIAL)[0]
        start = set(ad.outgoing(initial.id))
        lines.append("ASSIGN")
        lines.append(f"  init(acnode) := {self.node_values[initial.id]};")
        lines.append(f"  init(ac) := {self.labels[INIT_LABEL]};")
        for decl in ad.local_vars:
            minimum = self.expr(Const(decl.domain.minimum))
            lines.append(f"  init({self.var_names[decl.name]}) := {minimum};")
        for edge in self.resting:
            lines.append(f"  init({self.tokens[edge]}) := {'TRUE' if edge in start else 'FALSE'};")

        clauses: List[str] = []
        for node in ad.nodes:
            for edge in ad.incoming(node.id):
                if edge not in self.tokens:
                    continue
                if node.is_action:
                    clauses += [self.clause(node, edge, route) for route in _action_routes(ad, node)]
                elif node.kind is NodeKind.FINAL:
                    clauses.append(self.final_clause(node, edge))
        lines.append("TRANS")
        lines.append("  " + ("\n  | ".join(clauses) if clauses else "FALSE") + ";")
        return "\n".join(lines) + "\n"


def _action_routes(ad: ActivityDiagram, node: Node) -> List[Route]:
    return routes_from(ad, ad.outgoing(node.id)[0])


def emit_smv(ad: ActivityDiagram) -> str:
    """
    Render a validated diagram as an SMV module.

    Args:
        ad: A validated diagram

    Returns:
        Module text starting with "MODULE main"
    """
    return _Emitter(ad).render()
