"""
Seeded random generation of small well-formed diagrams and diagram pairs.

Diagrams are sequences of segments that each start and end with an action:
a single action, a two-way choice, a two-branch fork or a loop. Chaining
segments action to action keeps pseudo nodes apart by construction.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..analyzers.wellformed import check_guard_exclusivity, validate
from ..core.models.base import AdDiffError
from ..core.models.diagram import ActivityDiagram, Assignment, Domain, Node, Transition, VarDecl
from ..core.models.enums import DomainKind, NodeKind, VarKind
from ..core.models.expr import BinOp, Const, Expr, Not, Var

logger = logging.getLogger(__name__)

ALPHABET = ("a", "b", "c", "d", "e")
ENUM_LITERALS = ("red", "green", "blue")
SEGMENT_SIZES = {"act": 1, "choice": 6, "par": 6, "loop": 4}
MAX_ATTEMPTS = 100


@dataclass
class _Builder:
    rng: random.Random
    decls: Tuple[VarDecl, ...]
    alphabet: Sequence[str]
    nodes: List[Node] = field(default_factory=list)
    transitions: List[Transition] = field(default_factory=list)

    def fresh_id(self) -> str:
        return f"n{len(self.nodes) + 1}"

    def assignments(self, first: bool) -> Tuple[Assignment, ...]:
        result = []
        for decl in self.decls:
            if decl.kind is not VarKind.LOCAL:
                continue
            if first or self.rng.random() < 0.3:
                result.append(Assignment(var=decl.name, expr=self.value_expr(decl)))
        return tuple(result)

    def value_expr(self, decl: VarDecl) -> Expr:
        sources = [d for d in self.decls if d.kind is VarKind.INPUT and d.domain == decl.domain]
        if sources and self.rng.random() < 0.5:
            return Var(self.rng.choice(sources).name)
        return Const(self.rng.choice(decl.domain.values()))

    def action(self, name: Optional[str] = None, first: bool = False) -> str:
        node_id = self.fresh_id()
        self.nodes.append(
            Node(
                id=node_id,
                kind=NodeKind.ACTION,
                action_name=name or self.rng.choice(self.alphabet),
                assignments=self.assignments(first),
            )
        )
        return node_id

    def pseudo(self, kind: NodeKind) -> str:
        node_id = self.fresh_id()
        self.nodes.append(Node(id=node_id, kind=kind))
        return node_id

    def edge(self, src: str, trg: str, guard: Optional[Expr] = None) -> None:
        if guard is None:
            self.transitions.append(Transition(src=src, trg=trg))
        else:
            self.transitions.append(Transition(src=src, trg=trg, guard=guard))

    def guards(self) -> Tuple[Expr, Expr]:
        if not self.decls:
            raise AdDiffError("a decision needs a variable")
        decl = self.rng.choice(self.decls)
        var = Var(decl.name)
        if decl.domain.kind is DomainKind.BOOL:
            return var, Not(var)
        value = Const(self.rng.choice(decl.domain.values()))
        return BinOp("=", var, value), BinOp("!=", var, value)

    def segment(self, kind: str, first: bool) -> Tuple[str, str]:
        entry = self.action(first=first)
        if kind == "act":
            return entry, entry
        if kind == "loop":
            body = self.action()
            decision = self.pseudo(NodeKind.DECISION)
            leave = self.action()
            stay_guard, leave_guard = self.guards()
            self.edge(entry, body)
            self.edge(body, decision)
            self.edge(decision, entry, stay_guard)
            self.edge(decision, leave, leave_guard)
            return entry, leave

        split = self.pseudo(NodeKind.DECISION if kind == "choice" else NodeKind.FORK)
        if kind == "choice":
            left, right = self.action(), self.action()
            guard_left, guard_right = self.guards()
        else:
            names = self.rng.sample(list(self.alphabet), 2)
            left, right = self.action(names[0]), self.action(names[1])
            guard_left = guard_right = None
        close = self.pseudo(NodeKind.MERGE if kind == "choice" else NodeKind.JOIN)
        leave = self.action()
        self.edge(entry, split)
        self.edge(split, left, guard_left)
        self.edge(split, right, guard_right)
        self.edge(left, close)
        self.edge(right, close)
        self.edge(close, leave)
        return entry, leave


def random_declarations(rng: random.Random, max_vars: int = 2, max_domain: int = 4) -> Tuple[VarDecl, ...]:
    """Up to max_vars variables over bool, small integer ranges or a small enumeration"""
    decls = []
    for i in range(rng.randint(0, max_vars)):
        shape = rng.choice(("bool", "int", "enum"))
        if shape == "bool":
            domain = Domain.boolean()
        elif shape == "int":
            domain = Domain.integer(0, rng.randint(1, max_domain - 1))
        else:
            domain = Domain.enumeration(*ENUM_LITERALS[: min(max_domain, len(ENUM_LITERALS))])
        kind = VarKind.INPUT if rng.random() < 0.6 else VarKind.LOCAL
        decls.append(VarDecl(name=f"v{i + 1}", domain=domain, kind=kind))
    return tuple(decls)


def _attempt(
    rng: random.Random, name: str, decls: Tuple[VarDecl, ...], max_nodes: int, alphabet: Sequence[str]
) -> ActivityDiagram:
    builder = _Builder(rng, decls, alphabet)
    start = builder.pseudo(NodeKind.INITIAL)
    budget = max_nodes - 2
    previous = start
    first = True
    while True:
        kinds = [kind for kind, size in SEGMENT_SIZES.items() if size <= budget]
        if not decls:
            kinds = [kind for kind in kinds if kind in ("act", "par")]
        if not kinds or (not first and rng.random() < 0.3):
            break
        kind = rng.choice(kinds)
        entry, leave = builder.segment(kind, first)
        builder.edge(previous, entry)
        previous = leave
        budget -= SEGMENT_SIZES[kind]
        first = False
    stop = builder.pseudo(NodeKind.FINAL)
    builder.edge(previous, stop)

    inputs = tuple(d for d in decls if d.kind is VarKind.INPUT)
    local_vars = tuple(d for d in decls if d.kind is VarKind.LOCAL)
    return ActivityDiagram(
        name=name,
        input_vars=inputs,
        local_vars=local_vars,
        nodes=tuple(builder.nodes),
        transitions=tuple(builder.transitions),
    )


def random_diagram(
    rng: random.Random,
    name: str = "random",
    decls: Optional[Tuple[VarDecl, ...]] = None,
    max_nodes: int = 12,
    alphabet: Sequence[str] = ALPHABET,
) -> ActivityDiagram:
    """
    Generate a well-formed diagram with at most max_nodes nodes.

    Args:
        rng: Seeded random generator
        name: Diagram name
        decls: Variable declarations, drawn at random if omitted
        max_nodes: Upper bound on the node count (at least 3)
        alphabet: Action names to draw from

    Returns:
        A diagram that passes validate and check_guard_exclusivity
    """
    if max_nodes < 3:
        raise ValueError("max_nodes must be at least 3")
    if decls is None:
        decls = random_declarations(rng)
    for _ in range(MAX_ATTEMPTS):
        ad = _attempt(rng, name, decls, max_nodes, alphabet)
        diagnostics = validate(ad) or check_guard_exclusivity(ad)
        if not diagnostics:
            return ad
        logger.debug(f"discarding generated diagram: {diagnostics[0]}")
    raise AdDiffError(f"no well-formed diagram generated in {MAX_ATTEMPTS} attempts")


def _rename_one(rng: random.Random, ad: ActivityDiagram, alphabet: Sequence[str], name: str) -> ActivityDiagram:
    actions = [node for node in ad.nodes if node.is_action]
    target = rng.choice(actions)
    new_name = rng.choice([a for a in alphabet if a != target.action_name])
    nodes = tuple(
        node.model_copy(update={"action_name": new_name}) if node.id == target.id else node for node in ad.nodes
    )
    renamed = ad.model_copy(update={"name": name, "nodes": nodes})
    if validate(renamed):
        return ad.model_copy(update={"name": name})
    return renamed


def random_pair(
    rng: random.Random, max_nodes: int = 12, alphabet: Sequence[str] = ALPHABET
) -> Tuple[ActivityDiagram, ActivityDiagram]:
    """
    Generate two diagrams over the same declarations.

    The second diagram is, with equal probability, an independent diagram, a
    copy of the first with one action renamed, or an unchanged copy.
    """
    decls = random_declarations(rng)
    ad1 = random_diagram(rng, "left", decls, max_nodes, alphabet)
    choice = rng.random()
    if choice < 1 / 3:
        ad2 = random_diagram(rng, "right", decls, max_nodes, alphabet)
    elif choice < 2 / 3:
        ad2 = _rename_one(rng, ad1, alphabet, "right")
    else:
        ad2 = ad1.model_copy(update={"name": "right"})
    return ad1, ad2
