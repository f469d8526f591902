"""
Synthetic mutations of action nodes: rename, delete and move.
"""

import logging
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..analyzers.wellformed import check_guard_exclusivity, validate
from ..core.models.base import InvalidMutationError
from ..core.models.diagram import ActivityDiagram, Node, Transition
from ..core.models.enums import MutationKind

logger = logging.getLogger(__name__)


class MutationSpec(BaseModel):
    """One mutation of one action node"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: MutationKind = Field(description="rename, delete or move")
    target: str = Field(min_length=1, description="Id of the mutated action node")
    new_name: Optional[str] = Field(None, description="New action name (rename)")
    after: Optional[str] = Field(None, description="Action node the target is moved behind (move)")

    @field_validator("kind", mode="before")
    @classmethod
    def normalize_kind(cls, v: Any) -> Any:
        if isinstance(v, str):
            return MutationKind(v.strip().lower())
        return v

    @model_validator(mode="after")
    def check_payload(self) -> "MutationSpec":
        if self.kind is MutationKind.RENAME and not self.new_name:
            raise ValueError("a rename needs new_name")
        if self.kind is MutationKind.MOVE and not self.after:
            raise ValueError("a move needs after")
        return self


def _action_node(ad: ActivityDiagram, node_id: str) -> Node:
    node = ad.node_map().get(node_id)
    if node is None or not node.is_action:
        raise InvalidMutationError(f"'{node_id}' is not an action node of {ad.name}", target=node_id)
    return node


def _bypass(transitions: List[Transition], node_id: str) -> List[Transition]:
    """Remove a single-exit node, reconnecting its incoming transitions to its successor"""
    (exit_edge,) = [t for t in transitions if t.src == node_id]
    result = []
    for transition in transitions:
        if transition.src == node_id:
            continue
        if transition.trg == node_id:
            transition = transition.model_copy(update={"trg": exit_edge.trg})
        result.append(transition)
    return result


def mutate(ad: ActivityDiagram, spec: MutationSpec) -> ActivityDiagram:
    """
    Apply a mutation and check the result.

    Args:
        ad: Well-formed diagram
        spec: The mutation

    Returns:
        The mutated diagram, named after the original with a "_mut" suffix

    Raises:
        InvalidMutationError: If the target is not an action node or the result is ill-formed
    """
    node = _action_node(ad, spec.target)
    nodes = list(ad.nodes)
    transitions = list(ad.transitions)

    if spec.kind is MutationKind.RENAME:
        nodes = [n.model_copy(update={"action_name": spec.new_name}) if n.id == node.id else n for n in nodes]
    elif spec.kind is MutationKind.DELETE:
        nodes = [n for n in nodes if n.id != node.id]
        transitions = _bypass(transitions, node.id)
    else:
        anchor = _action_node(ad, spec.after)
        if anchor.id == node.id:
            raise InvalidMutationError("cannot move a node behind itself", target=node.id)
        transitions = _bypass(transitions, node.id)
        result = []
        for transition in transitions:
            if transition.src == anchor.id:
                result.append(Transition(src=anchor.id, trg=node.id))
                result.append(transition.model_copy(update={"src": node.id}))
            else:
                result.append(transition)
        transitions = result

    mutant = ad.model_copy(
        update={"name": f"{ad.name}_mut", "nodes": tuple(nodes), "transitions": tuple(transitions)}
    )
    diagnostics = validate(mutant)
    if not diagnostics:
        diagnostics = check_guard_exclusivity(mutant)
    if diagnostics:
        raise InvalidMutationError(
            f"{spec.kind.value} produces an ill-formed diagram", target=node.id, diagnostics=diagnostics
        )
    logger.debug(f"{spec.kind.value} {node.id}: {ad.name} -> {mutant.name}")
    return mutant


def forking_mutant(ad: ActivityDiagram) -> ActivityDiagram:
    """The benchmark mutant of a forking diagram: a_end renamed"""
    return mutate(ad, MutationSpec(kind=MutationKind.RENAME, target="a_end", new_name="a_end_renamed"))


def linear_mutant(ad: ActivityDiagram) -> ActivityDiagram:
    """The benchmark mutant of a linear diagram: the second action of the low arm renamed"""
    return mutate(ad, MutationSpec(kind=MutationKind.RENAME, target="t2", new_name="t2_renamed"))
