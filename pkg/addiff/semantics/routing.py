"""
Static token routing of a validated diagram.

Pseudo nodes are never adjacent in a validated diagram, so the token an
action (or the initial node) emits passes through at most one routing node
before it comes to rest on an edge into an action, a final node or a join.
A Route spells out one way this can happen; the symbolic encoding and the
SMV export build their transition relations from these routes, while the
explicit stepper fires pseudo nodes one at a time.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

from ..core.models.diagram import ActivityDiagram
from ..core.models.enums import NodeKind
from ..core.models.expr import TRUE, Expr

RESTING_KINDS = (NodeKind.ACTION, NodeKind.FINAL, NodeKind.JOIN)


@dataclass(frozen=True)
class Route:
    """
    One outcome of routing an emitted token.

    guard is read on the environment after the emitting action has run.
    A route through a join requires tokens on all of `present`; the route
    where the join keeps waiting requires at least one of `missing` to be
    empty instead.
    """

    guard: Expr
    emits: Tuple[int, ...]
    consumes: Tuple[int, ...] = ()
    present: Tuple[int, ...] = ()
    missing: Tuple[int, ...] = ()


def resting_edges(ad: ActivityDiagram) -> List[int]:
    """Transitions a token can rest on between two steps, in declaration order."""
    kinds = {node.id: node.kind for node in ad.nodes}
    return [i for i, t in enumerate(ad.transitions) if kinds.get(t.trg) in RESTING_KINDS]


def routes_from(ad: ActivityDiagram, edge: int) -> List[Route]:
    """
    Enumerate the routes of a token placed on a transition.

    Args:
        ad: A validated diagram
        edge: Index of the transition receiving the token

    Returns:
        The routes; their guards are exclusive and exhaustive on validated diagrams
    """
    transitions = ad.transitions
    target = ad.node(transitions[edge].trg)

    if target.kind in (NodeKind.ACTION, NodeKind.FINAL):
        return [Route(TRUE, (edge,))]

    outgoing = ad.outgoing(target.id)
    if target.kind is NodeKind.DECISION:
        return [Route(transitions[out].guard, (out,), consumes=()) for out in outgoing]
    if target.kind is NodeKind.MERGE:
        return [Route(TRUE, (outgoing[0],))]
    if target.kind is NodeKind.FORK:
        return [Route(TRUE, tuple(outgoing))]
    if target.kind is NodeKind.JOIN:
        siblings = tuple(i for i in ad.incoming(target.id) if i != edge)
        return [
            Route(TRUE, (outgoing[0],), consumes=siblings, present=siblings),
            Route(TRUE, (edge,), missing=siblings),
        ]
    return []


def routing_table(ad: ActivityDiagram) -> Dict[int, List[Route]]:
    """Routes of every transition leaving an action or the initial node."""
    kinds = {node.id: node.kind for node in ad.nodes}
    return {
        i: routes_from(ad, i)
        for i, t in enumerate(ad.transitions)
        if kinds.get(t.src) in (NodeKind.ACTION, NodeKind.INITIAL)
    }


def emitted_edges(routes: List[Route]) -> FrozenSet[int]:
    return frozenset(edge for route in routes for edge in route.emits)
