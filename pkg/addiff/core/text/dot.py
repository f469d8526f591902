"""
Graphviz DOT export of activity diagrams with optional trace highlighting.
"""

import logging
from typing import Dict, List, Union

from graphviz import Digraph

from ..models.base import TraceMismatchError
from ..models.diagram import ActivityDiagram, Node
from ..models.diff import DiffTrace
from ..models.enums import NodeKind
from ..models.expr import format_expr
from ..models.state import Trace

logger = logging.getLogger(__name__)

HIGHLIGHT_COLOR = "gold"

NODE_STYLES: Dict[NodeKind, Dict[str, str]] = {
    NodeKind.ACTION: {"shape": "box", "style": "rounded"},
    NodeKind.INITIAL: {"shape": "circle", "style": "filled", "fillcolor": "black", "width": "0.25", "label": ""},
    NodeKind.FINAL: {"shape": "doublecircle", "style": "filled", "fillcolor": "black", "width": "0.2", "label": ""},
    NodeKind.DECISION: {"shape": "diamond", "label": ""},
    NodeKind.MERGE: {"shape": "diamond", "label": ""},
    NodeKind.FORK: {"shape": "box", "style": "filled", "fillcolor": "black", "height": "0.08", "label": ""},
    NodeKind.JOIN: {"shape": "box", "style": "filled", "fillcolor": "black", "height": "0.08", "label": ""},
}


def _trace_nodes(trace: Union[DiffTrace, Trace, None], side: int) -> List[str]:
    """Node ids visited after the initial state, in trace order."""
    if trace is None:
        return []
    if isinstance(trace, DiffTrace):
        states = trace.ad1_states() if side == 1 else trace.ad2_states()
    else:
        states = list(trace.states)
    return [state.acnode for state in states[1:]]


def _node_attributes(node: Node, numbers: List[int]) -> Dict[str, str]:
    attributes = dict(NODE_STYLES[node.kind])
    if node.is_action:
        attributes["label"] = node.action_name or node.id
    if numbers:
        prefix = ",".join(str(number) for number in numbers)
        base_label = attributes.get("label", "")
        attributes["label"] = f"{prefix}: {base_label}" if base_label else prefix
        style = attributes.get("style", "")
        attributes["style"] = "filled" if not style else (style if "filled" in style else f"{style},filled")
        attributes["fillcolor"] = HIGHLIGHT_COLOR
        attributes["fontcolor"] = "black"
        attributes["penwidth"] = "2"
        if not node.is_action:
            attributes["xlabel"] = attributes.pop("label")
            attributes["label"] = ""
    return attributes


def export_dot(
    ad: ActivityDiagram, trace: Union[DiffTrace, Trace, None] = None, side: int = 1
) -> str:
    """
    Render a diagram as a DOT digraph.

    States after the initial one are numbered 1..k and their nodes are
    highlighted; a node visited several times carries all its numbers.

    Args:
        ad: Diagram to render
        trace: Optional diff trace or trace to highlight
        side: Which diagram of a diff trace ad is (1 or 2)

    Returns:
        DOT source text

    Raises:
        TraceMismatchError: If the trace visits a node ad does not declare
    """
    visited = _trace_nodes(trace, side)
    known = {node.id for node in ad.nodes}
    numbers: Dict[str, List[int]] = {}
    for position, node_id in enumerate(visited, start=1):
        if node_id not in known:
            raise TraceMismatchError(f"trace visits node '{node_id}' missing from '{ad.name}'", node=node_id)
        numbers.setdefault(node_id, []).append(position)

    graph = Digraph(
        name=ad.name,
        graph_attr={"rankdir": "TB"},
        node_attr={"fontname": "Helvetica", "fontsize": "11"},
        edge_attr={"fontname": "Helvetica", "fontsize": "9"},
    )
    for node in ad.nodes:
        graph.node(node.id, **_node_attributes(node, numbers.get(node.id, [])))
    for transition in ad.transitions:
        if transition.has_guard:
            graph.edge(transition.src, transition.trg, label=f"[{format_expr(transition.guard)}]")
        else:
            graph.edge(transition.src, transition.trg)

    logger.debug(f"Exported {ad.name} with {len(numbers)} highlighted node(s)")
    return graph.source

