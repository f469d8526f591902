"""
Independent checks of diff traces against the operational semantics.

Used as the oracle of the differencing algorithms: conformance of a single
trace to the definition of a diff trace, and a bounded subset-construction
search for the shortest diff trace length of every input assignment.
"""

import logging
from collections import deque
from typing import Deque, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from ..core.budget import ResourceBudget
from ..core.models.diagram import ActivityDiagram
from ..core.models.diff import DiffTrace
from ..core.models.state import AdState, Binding
from ..semantics.stepper import StateSpace
from .correspondence import Correspondence

logger = logging.getLogger(__name__)


def check_diff_trace(
    trace: DiffTrace,
    ad1: ActivityDiagram,
    ad2: ActivityDiagram,
    spaces: Optional[Tuple[StateSpace, StateSpace]] = None,
) -> List[str]:
    """
    List every way a trace fails to be a diff trace of ad1 against ad2.

    Args:
        trace: Trace to check
        ad1: First diagram
        ad2: Second diagram
        spaces: State spaces of both diagrams, to share successor caches

    Returns:
        Problem descriptions, empty when the trace conforms
    """
    space1, space2 = spaces or (StateSpace(ad1), StateSpace(ad2))
    corr = Correspondence(ad1, ad2)
    problems: List[str] = []
    steps = trace.steps
    if not steps:
        return ["trace is empty"]

    if steps[0].s1 not in space1.initial_states():
        problems.append(f"step 0: {steps[0].s1} is not an initial state of {ad1.name}")
    for i in range(1, len(steps)):
        if steps[i].s1 not in space1.successors(steps[i - 1].s1):
            problems.append(f"step {i}: {steps[i].s1} does not follow {steps[i - 1].s1} in {ad1.name}")

    last = len(steps) - 1
    for i, step in enumerate(steps[:last]):
        if step.s2 is None:
            problems.append(f"step {i}: second diagram state is missing")
            return problems
        if not corr(step.s1, step.s2):
            problems.append(f"step {i}: {step.s1} and {step.s2} do not correspond")
    if steps[last].s2 is not None:
        problems.append(f"step {last}: the last step has a second diagram state")

    if last == 0:
        candidates: Sequence[AdState] = space2.initial_states()
    else:
        if steps[0].s2 not in space2.initial_states():
            problems.append(f"step 0: {steps[0].s2} is not an initial state of {ad2.name}")
        for i in range(1, last):
            if steps[i].s2 not in space2.successors(steps[i - 1].s2):
                problems.append(f"step {i}: {steps[i].s2} does not follow {steps[i - 1].s2} in {ad2.name}")
        candidates = space2.successors(steps[last - 1].s2)
    for candidate in candidates:
        if corr(steps[last].s1, candidate):
            problems.append(f"step {last}: {candidate} of {ad2.name} corresponds to {steps[last].s1}")
            break
    return problems


def shortest_diff_lengths(
    ad1: ActivityDiagram,
    ad2: ActivityDiagram,
    max_len: int,
    budget: Optional[ResourceBudget] = None,
) -> Dict[Tuple[Binding, ...], int]:
    """
    Shortest diff trace length of every input assignment of ad1, by brute force.

    Explores traces of ad1 together with the set of ad2 states that can follow
    them; a trace is a diff trace when some state of that set has no successor
    corresponding to the next step.

    Args:
        ad1: First diagram
        ad2: Second diagram
        max_len: Longest trace length to explore
        budget: Optional budget on explored configurations

    Returns:
        Map from ad1 input assignment to the length of its shortest diff trace;
        assignments without one within max_len are absent
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    space1, space2 = StateSpace(ad1), StateSpace(ad2)
    corr = Correspondence(ad1, ad2)
    initials2 = space2.initial_states()
    lengths: Dict[Tuple[Binding, ...], int] = {}

    for ini1 in space1.initial_states():
        followers = frozenset(ini2 for ini2 in initials2 if corr(ini1, ini2))
        if not followers:
            lengths[ini1.inputs] = 1
            continue
        seen: Set[Tuple[AdState, FrozenSet[AdState]]] = {(ini1, followers)}
        frontier: Deque[Tuple[AdState, FrozenSet[AdState], int]] = deque([(ini1, followers, 1)])
        while frontier and ini1.inputs not in lengths:
            state, followers, length = frontier.popleft()
            if length >= max_len:
                continue
            for next1 in space1.successors(state):
                moves = [
                    [next2 for next2 in space2.successors(s2) if corr(next1, next2)]
                    for s2 in sorted(followers, key=AdState.sort_key)
                ]
                if any(not move for move in moves):
                    lengths[ini1.inputs] = length + 1
                    break
                successors = frozenset(next2 for move in moves for next2 in move)
                if (next1, successors) not in seen:
                    seen.add((next1, successors))
                    frontier.append((next1, successors, length + 1))
                    if budget is not None:
                        budget.consume()
    logger.debug(f"{ad1.name} -> {ad2.name}: {len(lengths)} input assignments with a diff trace")
    return lengths


def is_prefix_minimal(trace: DiffTrace, ad1: ActivityDiagram, ad2: ActivityDiagram) -> bool:
    """True iff no proper prefix of the trace's first-diagram run is itself a diff trace"""
    space1, space2 = StateSpace(ad1), StateSpace(ad2)
    corr = Correspondence(ad1, ad2)
    states = trace.ad1_states()
    followers = [s2 for s2 in space2.initial_states() if corr(states[0], s2)]
    if not followers:
        return len(states) == 1
    for i in range(1, len(states) - 1):
        moves = [[n2 for n2 in space2.successors(s2) if corr(states[i], n2)] for s2 in followers]
        if any(not move for move in moves):
            return False
        followers = sorted({n2 for move in moves for n2 in move}, key=AdState.sort_key)
    return True
