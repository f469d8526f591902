"""
Synthetic diagram families for scalability runs.

- forking: W concurrent branches of L actions between a fork and a join
- linear: two linear fragments of L actions around a single decision over
  a domain of size D
"""

import logging
from typing import List

from ..core.models.base import validate_positive
from ..core.models.diagram import ActivityDiagram, Assignment, Domain, Node, Transition, VarDecl
from ..core.models.enums import LinearVariant, NodeKind, VarKind
from ..core.models.expr import BinOp, Const, Var

logger = logging.getLogger(__name__)

LINEAR_ARM_LENGTH = 3


def _action(node_id: str, assignments=()) -> Node:
    return Node(id=node_id, kind=NodeKind.ACTION, action_name=node_id, assignments=tuple(assignments))


def _chain(ids: List[str]) -> List[Transition]:
    return [Transition(src=src, trg=trg) for src, trg in zip(ids, ids[1:])]


def gen_forking(width: int, length: int) -> ActivityDiagram:
    """
    Build initial -> a0 -> fork -> width branches of length actions -> join -> a_end -> final.

    Args:
        width: Number of concurrent branches (W >= 1)
        length: Actions per branch (L >= 1)

    Returns:
        A diagram with W*L + 6 nodes and no variables
    """
    validate_positive(width, "width")
    validate_positive(length, "length")

    nodes = [Node(id="start", kind=NodeKind.INITIAL), _action("a0"), Node(id="split", kind=NodeKind.FORK)]
    transitions = _chain(["start", "a0", "split"])
    for w in range(1, width + 1):
        branch = [f"b{w}_{k}" for k in range(1, length + 1)]
        nodes.extend(_action(node_id) for node_id in branch)
        transitions.extend(_chain(["split"] + branch + ["sync"]))
    nodes.extend(
        [Node(id="sync", kind=NodeKind.JOIN), _action("a_end"), Node(id="stop", kind=NodeKind.FINAL)]
    )
    transitions.extend(_chain(["sync", "a_end", "stop"]))

    logger.debug(f"forking W{width}/L{length}: {len(nodes)} nodes")
    return ActivityDiagram(name=f"forking_w{width}_l{length}", nodes=tuple(nodes), transitions=tuple(transitions))


def gen_linear(length: int, domain_size: int, variant: LinearVariant = LinearVariant.INPUT) -> ActivityDiagram:
    """
    Build L actions -> decision on d -> two arms of three actions -> merge -> L actions.

    The decision takes the first arm when d < D/2. With the input variant d
    is an input; with the local variant d is a local set from the input sel
    by the first action.

    Args:
        length: Actions before and after the decision (L >= 1)
        domain_size: Size D of the domain 0..D-1 of d, even and at least 2
        variant: Where d lives

    Returns:
        A diagram with 2L + 10 nodes
    """
    validate_positive(length, "length")
    if domain_size < 2 or domain_size % 2:
        raise ValueError(f"domain_size must be even and at least 2, got {domain_size}")
    variant = LinearVariant(variant)
    domain = Domain.integer(0, domain_size - 1)

    if variant is LinearVariant.INPUT:
        input_vars = (VarDecl(name="d", domain=domain, kind=VarKind.INPUT),)
        local_vars = ()
        first_assignments = ()
    else:
        input_vars = (VarDecl(name="sel", domain=domain, kind=VarKind.INPUT),)
        local_vars = (VarDecl(name="d", domain=domain, kind=VarKind.LOCAL),)
        first_assignments = (Assignment(var="d", expr=Var("sel")),)

    head = [f"l{k}" for k in range(1, length + 1)]
    tail = [f"m{k}" for k in range(1, length + 1)]
    low = [f"t{k}" for k in range(1, LINEAR_ARM_LENGTH + 1)]
    high = [f"f{k}" for k in range(1, LINEAR_ARM_LENGTH + 1)]

    nodes = [Node(id="start", kind=NodeKind.INITIAL)]
    nodes.append(_action(head[0], first_assignments))
    nodes.extend(_action(node_id) for node_id in head[1:])
    nodes.append(Node(id="branch", kind=NodeKind.DECISION))
    nodes.extend(_action(node_id) for node_id in low + high)
    nodes.append(Node(id="rejoin", kind=NodeKind.MERGE))
    nodes.extend(_action(node_id) for node_id in tail)
    nodes.append(Node(id="stop", kind=NodeKind.FINAL))

    half = Const(domain_size // 2)
    transitions = _chain(["start"] + head + ["branch"])
    transitions.append(Transition(src="branch", trg=low[0], guard=BinOp("<", Var("d"), half)))
    transitions.append(Transition(src="branch", trg=high[0], guard=BinOp(">=", Var("d"), half)))
    transitions.extend(_chain(low + ["rejoin"]))
    transitions.extend(_chain(high + ["rejoin"]))
    transitions.extend(_chain(["rejoin"] + tail + ["stop"]))

    return ActivityDiagram(
        name=f"linear_l{length}_d{domain_size}_{variant.value}",
        input_vars=input_vars,
        local_vars=local_vars,
        nodes=tuple(nodes),
        transitions=tuple(transitions),
    )
