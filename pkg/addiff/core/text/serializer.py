"""
Serializer for the .ad diagram format.
"""

from typing import List

from ..models.diagram import ActivityDiagram, Node, VarDecl
from ..models.expr import format_expr

INDENT = "  "


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _declaration(decl: VarDecl) -> str:
    return f"{decl.kind.value} {decl.name} : {decl.domain};"


def _node(node: Node) -> str:
    if not node.is_action:
        return f"{node.kind.value} {node.id};"
    text = f"action {node.id} {_quote(node.action_name or '')}"
    if node.assignments:
        body = " ".join(f"{a.var} = {format_expr(a.expr)};" for a in node.assignments)
        text += " { " + body + " }"
    return text + ";"


def serialize(ad: ActivityDiagram) -> str:
    """
    Render a diagram in the .ad text format.

    Declarations, nodes and transitions keep their order, so parsing the
    result yields an equal diagram.

    Args:
        ad: Diagram to render

    Returns:
        The source text, ending with a newline
    """
    lines: List[str] = [f"activity {ad.name} {{"]
    for decl in ad.variables:
        lines.append(INDENT + _declaration(decl))
    if ad.variables:
        lines.append("")
    for node in ad.nodes:
        lines.append(INDENT + _node(node))
    if ad.nodes and ad.transitions:
        lines.append("")
    for transition in ad.transitions:
        edge = f"{transition.src} -> {transition.trg}"
        if transition.has_guard:
            edge += f" [{format_expr(transition.guard)}]"
        lines.append(INDENT + edge + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
