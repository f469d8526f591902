"""
Binary encoding of activity diagrams into decision diagrams.

Each finite-domain variable becomes a block of bits holding the index of
its value, most significant bit first. A diagram side contributes its
inputs, its locals, an `acnode` variable over the initial, action and final
nodes (the action label is a function of it) and one bit per transition a
token can rest on. Bits of side k are prefixed "k." and every bit is
declared immediately before its primed copy.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..models.base import IncomparableInputsError, StateConstructionError
from ..models.diagram import ActivityDiagram, Domain
from ..models.enums import NodeKind
from ..models.expr import BinOp, Const, Expr, Not, Value, Var, apply_op
from ..models.state import FIN_LABEL, INIT_LABEL, AdState
from ...semantics.routing import Route, resting_edges, routes_from
from .manager import PRIME, DdManager, SymbolicSet, TransitionRelation

logger = logging.getLogger(__name__)

ValueMap = Dict[Value, SymbolicSet]


def bit_width(cardinality: int) -> int:
    return max(1, (cardinality - 1).bit_length())


@dataclass(frozen=True)
class FiniteVar:
    """A finite-domain variable and the bits encoding its value index"""

    name: str
    values: Tuple[Value, ...]
    bits: Tuple[str, ...]

    @classmethod
    def create(cls, name: str, values: Sequence[Value], prefix: str) -> "FiniteVar":
        width = bit_width(len(values))
        return cls(name, tuple(values), tuple(f"{prefix}{name}.{i}" for i in range(width)))

    @property
    def width(self) -> int:
        return len(self.bits)

    def bit_names(self, primed: bool = False) -> Tuple[str, ...]:
        return tuple(bit + PRIME for bit in self.bits) if primed else self.bits

    def code(self, index: int) -> Dict[str, bool]:
        return {bit: bool((index >> (self.width - 1 - i)) & 1) for i, bit in enumerate(self.bits)}

    def eq_index(self, manager: DdManager, index: int, primed: bool = False) -> SymbolicSet:
        names = self.bit_names(primed)
        return manager.cube({name: value for name, value in zip(names, self.code(index).values())})

    def eq_value(self, manager: DdManager, value: Value, primed: bool = False) -> SymbolicSet:
        return self.eq_index(manager, self.values.index(value), primed)

    def valid(self, manager: DdManager, primed: bool = False) -> SymbolicSet:
        """Codes below the cardinality, built bitwise against the largest index"""
        bound = len(self.values) - 1
        names = self.bit_names(primed)
        result = manager.true
        for i in reversed(range(self.width)):
            bit = manager.var(names[i])
            if (bound >> (self.width - 1 - i)) & 1:
                result = ~bit | result
            else:
                result = ~bit & result
        return result

    def same(self, manager: DdManager, other: "FiniteVar", primed: bool = False, other_primed: bool = False) -> SymbolicSet:
        mine = self.bit_names(primed)
        theirs = other.bit_names(other_primed)
        return manager.conjoin(manager.var(a).iff(manager.var(b)) for a, b in zip(mine, theirs))

    def value_map(self, manager: DdManager, primed: bool = False) -> ValueMap:
        return {value: self.eq_index(manager, i, primed) for i, value in enumerate(self.values)}

    def decode(self, assignment: Mapping[str, bool], primed: bool = False) -> Value:
        index = 0
        for name in self.bit_names(primed):
            index = (index << 1) | int(assignment.get(name, False))
        return self.values[index]


class ExprCompiler:
    """Compiles expressions into value maps over the bits of their variables"""

    def __init__(self, manager: DdManager, variables: Mapping[str, FiniteVar]):
        self.manager = manager
        self.variables = variables

    def compile(self, expr: Expr, primed: bool = False) -> ValueMap:
        """
        Map each value the expression can take to the set of assignments producing it.

        Args:
            expr: A well-typed expression
            primed: Read variables from their primed bits

        Returns:
            Disjoint sets keyed by value, covering all valid assignments
        """
        manager = self.manager
        if isinstance(expr, Const):
            return {expr.value: manager.true}
        if isinstance(expr, Var):
            return self.variables[expr.name].value_map(manager, primed)
        if isinstance(expr, Not):
            operand = self.compile(expr.operand, primed)
            return _prune({True: operand.get(False, manager.false), False: operand.get(True, manager.false)})
        if isinstance(expr, BinOp):
            left = self.compile(expr.left, primed)
            right = self.compile(expr.right, primed)
            result: ValueMap = {}
            for (a, left_set), (b, right_set) in itertools.product(left.items(), right.items()):
                both = left_set & right_set
                if both.is_empty:
                    continue
                value = apply_op(expr.op, a, b)
                result[value] = result[value] | both if value in result else both
            return result
        raise TypeError(f"unknown expression node {expr!r}")

    def holds(self, expr: Expr, primed: bool = False) -> SymbolicSet:
        """The set of assignments making a boolean expression true"""
        return self.compile(expr, primed).get(True, self.manager.false)


def _prune(value_map: ValueMap) -> ValueMap:
    return {value: s for value, s in value_map.items() if not s.is_empty}


@dataclass
class SideLayout:
    """The encoded variables of one diagram side"""

    ad: ActivityDiagram
    prefix: str
    inputs: Dict[str, FiniteVar]
    locals: Dict[str, FiniteVar]
    acnode: FiniteVar
    tokens: Dict[int, str]

    @classmethod
    def create(cls, ad: ActivityDiagram, side: int) -> "SideLayout":
        prefix = f"{side}."
        inputs = {d.name: FiniteVar.create(d.name, d.domain.values(), prefix) for d in ad.input_vars}
        local_vars = {d.name: FiniteVar.create(d.name, d.domain.values(), prefix) for d in ad.local_vars}
        located = [
            node.id for node in ad.nodes if node.kind in (NodeKind.INITIAL, NodeKind.ACTION, NodeKind.FINAL)
        ]
        acnode = FiniteVar.create("@node", located, prefix)
        tokens = {edge: f"{prefix}@t{edge}" for edge in resting_edges(ad)}
        return cls(ad, prefix, inputs, local_vars, acnode, tokens)

    def variables(self) -> Dict[str, FiniteVar]:
        return {**self.inputs, **self.locals}

    def blocks(self) -> List[Tuple[str, ...]]:
        """Bit blocks in declaration order: inputs, locals, acnode, tokens"""
        blocks = [var.bits for var in self.inputs.values()]
        blocks += [var.bits for var in self.locals.values()]
        blocks.append(self.acnode.bits)
        blocks += [(bit,) for bit in self.tokens.values()]
        return blocks

    def state_bits(self) -> Tuple[str, ...]:
        return tuple(bit for block in self.blocks() for bit in block)

    def primed_bits(self) -> Tuple[str, ...]:
        return tuple(bit + PRIME for bit in self.state_bits())


def _interleave(first: Sequence[str], second: Sequence[str]) -> List[str]:
    merged: List[str] = []
    for a, b in itertools.zip_longest(first, second):
        merged += [name for name in (a, b) if name is not None]
    return merged


def joint_order(layout1: SideLayout, layout2: Optional[SideLayout] = None) -> List[str]:
    """
    Declaration order of the unprimed state bits of one or two sides.

    Shared inputs come first with their bits interleaved, then the two
    acnode blocks interleaved, then the remaining blocks of both sides
    paired up in declaration order.
    """
    if layout2 is None:
        return list(layout1.state_bits())

    shared = [name for name in layout1.inputs if name in layout2.inputs]
    order: List[str] = []
    for name in shared:
        order += _interleave(layout1.inputs[name].bits, layout2.inputs[name].bits)
    order += _interleave(layout1.acnode.bits, layout2.acnode.bits)

    def rest(layout: SideLayout) -> List[Tuple[str, ...]]:
        blocks = [var.bits for name, var in layout.inputs.items() if name not in shared]
        blocks += [var.bits for var in layout.locals.values()]
        blocks += [(bit,) for bit in layout.tokens.values()]
        return blocks

    for block1, block2 in itertools.zip_longest(rest(layout1), rest(layout2), fillvalue=()):
        order += list(block1) + list(block2)
    return order


class SymbolicDiagram:
    """
    Initial states, validity constraint and partitioned transition relation
    of one diagram side.
    """

    def __init__(self, ad: ActivityDiagram, manager: DdManager, layout: SideLayout):
        self.ad = ad
        self.manager = manager
        self.layout = layout
        self.compiler = ExprCompiler(manager, layout.variables())
        self.node_index = {node_id: i for i, node_id in enumerate(layout.acnode.values)}
        self.labels: Dict[str, str] = {}
        for node in ad.nodes:
            if node.kind is NodeKind.INITIAL:
                self.labels[node.id] = INIT_LABEL
            elif node.kind is NodeKind.FINAL:
                self.labels[node.id] = FIN_LABEL
            elif node.is_action:
                self.labels[node.id] = node.action_name or node.id
        self.assign_errors: List[Tuple[str, str, SymbolicSet]] = []
        self.relation = TransitionRelation(
            parts=self._build_parts(),
            unprimed=layout.state_bits(),
            primed=layout.primed_bits(),
        )
        self.valid = self._valid()
        self.initial = self._initial()

    # encoding helpers

    def token(self, edge: int, primed: bool = False) -> SymbolicSet:
        name = self.layout.tokens[edge]
        return self.manager.var(name + PRIME if primed else name)

    def at_node(self, node_id: str, primed: bool = False) -> SymbolicSet:
        return self.layout.acnode.eq_index(self.manager, self.node_index[node_id], primed)

    def with_label(self, label: str) -> SymbolicSet:
        """States whose action label is label"""
        return self.manager.disjoin(
            self.at_node(node_id) for node_id, node_label in self.labels.items() if node_label == label
        )

    def _valid(self, primed: bool = False) -> SymbolicSet:
        variables = list(self.layout.variables().values()) + [self.layout.acnode]
        return self.manager.conjoin(var.valid(self.manager, primed) for var in variables)

    def _initial(self) -> SymbolicSet:
        manager = self.manager
        initial = self.ad.nodes_of_kind(NodeKind.INITIAL)[0]
        start = set(self.ad.outgoing(initial.id))
        parts = [self.at_node(initial.id)]
        parts += [var.valid(manager) for var in self.layout.inputs.values()]
        parts += [var.eq_index(manager, 0) for var in self.layout.locals.values()]
        parts += [self.token(edge) if edge in start else ~self.token(edge) for edge in self.layout.tokens]
        return manager.conjoin(parts)

    def _frame(self, variables: Mapping[str, FiniteVar]) -> SymbolicSet:
        return self.manager.conjoin(var.same(self.manager, var, primed=True) for var in variables.values())

    def _tokens_after(self, consumed: Sequence[int], emitted: Sequence[int]) -> SymbolicSet:
        parts = []
        for edge in self.layout.tokens:
            if edge in emitted:
                parts.append(self.token(edge, primed=True))
            elif edge in consumed:
                parts.append(~self.token(edge, primed=True))
            else:
                parts.append(self.token(edge, primed=True).iff(self.token(edge)))
        return self.manager.conjoin(parts)

    def _assignments(self, node_id: str, enabled: SymbolicSet) -> SymbolicSet:
        """Next values of the locals after the action node runs"""
        manager = self.manager
        node = self.ad.node(node_id)
        assigned = {a.var: a.expr for a in node.assignments}
        parts = []
        for name, var in self.layout.locals.items():
            if name not in assigned:
                parts.append(var.same(manager, var, primed=True))
                continue
            in_domain = manager.false
            out_of_domain = manager.false
            for value, condition in self.compiler.compile(assigned[name]).items():
                if value in var.values:
                    in_domain = in_domain | (condition & var.eq_value(manager, value, primed=True))
                else:
                    out_of_domain = out_of_domain | condition
            if not out_of_domain.is_empty:
                self.assign_errors.append((node_id, name, enabled & out_of_domain))
            parts.append(in_domain)
        return manager.conjoin(parts)

    def _route_part(self, node_id: str, edge: int, route: Route, locals_next: SymbolicSet) -> SymbolicSet:
        manager = self.manager
        parts = [self.token(edge)]
        parts += [self.token(e) for e in route.present]
        if route.missing:
            parts.append(manager.disjoin(~self.token(e) for e in route.missing))
        parts.append(self.at_node(node_id, primed=True))
        parts.append(self._frame(self.layout.inputs))
        parts.append(locals_next)
        parts.append(self.compiler.holds(route.guard, primed=True))
        parts.append(self._tokens_after((edge,) + route.consumes, route.emits))
        return manager.conjoin(parts)

    def _build_parts(self) -> List[SymbolicSet]:
        manager = self.manager
        parts: List[SymbolicSet] = []
        for node in self.ad.nodes:
            incoming = [edge for edge in self.ad.incoming(node.id) if edge in self.layout.tokens]
            if not incoming:
                continue
            if node.is_action:
                enabled = manager.disjoin(self.token(edge) for edge in incoming)
                locals_next = self._assignments(node.id, enabled)
                routes = routes_from(self.ad, self.ad.outgoing(node.id)[0])
                for edge in incoming:
                    for route in routes:
                        part = self._route_part(node.id, edge, route, locals_next)
                        if not part.is_empty:
                            parts.append(part)
            elif node.kind is NodeKind.FINAL:
                for edge in incoming:
                    parts.append(
                        manager.conjoin(
                            [
                                self.token(edge),
                                self.at_node(node.id, primed=True),
                                self._frame(self.layout.variables()),
                                self._tokens_after(tuple(self.layout.tokens), ()),
                            ]
                        )
                    )
        return parts

    # analysis

    def reachable(self) -> SymbolicSet:
        """
        Forward reachable states.

        Raises:
            StateConstructionError: If a reachable state runs an assignment out of its domain
        """
        reached = self.initial
        frontier = self.initial
        while not frontier.is_empty:
            self._check_assignments(frontier)
            successors = self.manager.image(frontier, self.relation)
            frontier = successors - reached
            reached = reached | successors
        return reached

    def _check_assignments(self, states: SymbolicSet) -> None:
        for node_id, variable, error in self.assign_errors:
            witness = states & error
            if not witness.is_empty:
                state = self.decode(self.manager.pick_one(witness, self.layout.state_bits()))
                raise StateConstructionError(
                    f"assignment leaves the domain of '{variable}' from state {state}",
                    node=node_id,
                    variable=variable,
                )

    def count(self, states: SymbolicSet) -> int:
        return self.manager.sat_count(states, self.layout.state_bits())

    def encode(self, state: AdState) -> SymbolicSet:
        """The singleton set of a concrete state"""
        manager = self.manager
        assignment: Dict[str, bool] = {}
        for name, value in state.inputs:
            var = self.layout.inputs[name]
            assignment.update(var.code(var.values.index(value)))
        for name, value in state.local_values:
            var = self.layout.locals[name]
            assignment.update(var.code(var.values.index(value)))
        assignment.update(self.layout.acnode.code(self.node_index[state.acnode]))
        marking = set(state.marking)
        for edge, bit in self.layout.tokens.items():
            assignment[bit] = edge in marking
        return manager.cube(assignment)

    def decode(self, assignment: Mapping[str, bool]) -> AdState:
        node_id = self.layout.acnode.decode(assignment)
        return AdState(
            acnode=node_id,
            ac=self.labels[node_id],
            inputs=tuple((name, var.decode(assignment)) for name, var in self.layout.inputs.items()),
            local_values=tuple((name, var.decode(assignment)) for name, var in self.layout.locals.items()),
            marking=tuple(sorted(edge for edge, bit in self.layout.tokens.items() if assignment.get(bit))),
        )

    def pick(self, states: SymbolicSet) -> AdState:
        return self.decode(self.manager.pick_one(states, self.layout.state_bits()))

    def successors_of(self, states: SymbolicSet) -> SymbolicSet:
        return self.manager.image(states, self.relation)


def check_shared_inputs(ad1: ActivityDiagram, ad2: ActivityDiagram) -> List[str]:
    """
    Names of the inputs both diagrams declare.

    Raises:
        IncomparableInputsError: If a shared input has different domains
    """
    domains2: Dict[str, Domain] = {d.name: d.domain for d in ad2.input_vars}
    shared = []
    for decl in ad1.input_vars:
        if decl.name not in domains2:
            continue
        if decl.domain != domains2[decl.name]:
            raise IncomparableInputsError(
                f"input '{decl.name}' is {decl.domain} in {ad1.name} but {domains2[decl.name]} in {ad2.name}",
                variable=decl.name,
            )
        shared.append(decl.name)
    return shared


class JointEncoding:
    """Both diagrams of a comparison in one manager, with their correspondence"""

    def __init__(self, ad1: ActivityDiagram, ad2: ActivityDiagram, node_budget: Optional[int] = None):
        self.shared = check_shared_inputs(ad1, ad2)
        self.manager = DdManager(node_budget=node_budget, name=f"{ad1.name}->{ad2.name}")
        layout1 = SideLayout.create(ad1, 1)
        layout2 = SideLayout.create(ad2, 2)
        self.manager.declare_state_bits(*joint_order(layout1, layout2))
        self.side1 = SymbolicDiagram(ad1, self.manager, layout1)
        self.side2 = SymbolicDiagram(ad2, self.manager, layout2)
        self.valid = self.side1.valid & self.side2.valid
        self.corr = self._correspondence()
        self.initials = self.side1.initial & self.side2.initial & self.corr

    def _correspondence(self) -> SymbolicSet:
        manager = self.manager
        labels = set(self.side1.labels.values()) & set(self.side2.labels.values())
        same_label = manager.disjoin(
            self.side1.with_label(label) & self.side2.with_label(label) for label in sorted(labels)
        )
        same_inputs = manager.conjoin(
            self.side1.layout.inputs[name].same(manager, self.side2.layout.inputs[name]) for name in self.shared
        )
        return same_label & same_inputs

    def check_assignments(self) -> None:
        """Raise if either diagram can reach an out-of-domain assignment"""
        for side in (self.side1, self.side2):
            if side.assign_errors:
                side.reachable()

    def describe(self) -> str:
        return (
            f"{len(self.manager.order)} variables, {len(self.side1.relation)}+{len(self.side2.relation)} "
            f"relation parts, {self.manager.node_count} nodes"
        )


def single_encoding(ad: ActivityDiagram, node_budget: Optional[int] = None) -> SymbolicDiagram:
    """Encode one diagram in a manager of its own"""
    manager = DdManager(node_budget=node_budget, name=ad.name)
    layout = SideLayout.create(ad, 1)
    manager.declare_state_bits(*joint_order(layout))
    return SymbolicDiagram(ad, manager, layout)


def compile_guards(
    manager: DdManager, variables: Mapping[str, FiniteVar], guards: Sequence[Expr]
) -> List[SymbolicSet]:
    """Satisfying sets of boolean guards over already declared variables"""
    compiler = ExprCompiler(manager, variables)
    return [compiler.holds(guard) for guard in guards]


__all__ = [
    "ExprCompiler",
    "FiniteVar",
    "JointEncoding",
    "SideLayout",
    "SymbolicDiagram",
    "bit_width",
    "check_shared_inputs",
    "compile_guards",
    "joint_order",
    "single_encoding",
]
