"""
Trace enumeration and reachability over the explicit state space.
"""

import logging
from collections import deque
from typing import Deque, List, Mapping, Optional, Set

from ..core.budget import ResourceBudget
from ..core.models.diagram import ActivityDiagram
from ..core.models.expr import Value
from ..core.models.state import AdState, Trace
from .stepper import StateSpace

logger = logging.getLogger(__name__)


def _matches(state: AdState, inputs: Optional[Mapping[str, Value]]) -> bool:
    if not inputs:
        return True
    values = dict(state.inputs)
    return all(name in values and values[name] == value for name, value in inputs.items())


def reachable_states(
    ad: ActivityDiagram,
    budget: Optional[ResourceBudget] = None,
    space: Optional[StateSpace] = None,
) -> List[AdState]:
    """
    Compute all states reachable from the initial states.

    Args:
        ad: A validated diagram
        budget: Optional state budget, charged once per discovered state
        space: Reuse an existing state space (and its successor cache)

    Returns:
        The reachable states in canonical order

    Raises:
        BudgetExceededError: If the budget runs out
    """
    space = space or StateSpace(ad)
    seen: Set[AdState] = set()
    queue: Deque[AdState] = deque()
    for state in space.initial_states():
        if state not in seen:
            seen.add(state)
            queue.append(state)
            if budget is not None:
                budget.consume()

    while queue:
        state = queue.popleft()
        for successor in space.successors(state):
            if successor in seen:
                continue
            seen.add(successor)
            queue.append(successor)
            if budget is not None:
                budget.consume()

    logger.debug(f"{ad.name}: {len(seen)} reachable states")
    return sorted(seen, key=AdState.sort_key)


def enumerate_traces(
    ad: ActivityDiagram,
    max_len: int,
    inputs: Optional[Mapping[str, Value]] = None,
    budget: Optional[ResourceBudget] = None,
) -> List[Trace]:
    """
    Enumerate every trace of at most max_len states, breadth first.

    Args:
        ad: A validated diagram
        max_len: Longest trace to produce, at least 1
        inputs: Only start from initial states with these input values
        budget: Optional budget, charged once per produced trace

    Returns:
        All traces (prefixes included), shortest first

    Raises:
        ValueError: If max_len is below 1
        BudgetExceededError: If the budget runs out
    """
    if max_len < 1:
        raise ValueError(f"max_len must be at least 1, got {max_len}")

    space = StateSpace(ad)
    layer = [Trace((state,)) for state in space.initial_states() if _matches(state, inputs)]
    traces: List[Trace] = []
    length = 1
    while layer:
        traces.extend(layer)
        if budget is not None:
            budget.consume(len(layer))
        if length == max_len:
            break
        layer = [trace.extend(successor) for trace in layer for successor in space.successors(trace.last)]
        length += 1
    return traces


def is_accepting(trace: Trace) -> bool:
    """A trace is accepting when its last state sits on a final node"""
    return trace.last.is_final
