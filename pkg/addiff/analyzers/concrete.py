"""
Explicit-state differencing.

Breadth-first search over pairs of corresponding states. A pair whose first
state has a successor no successor of the second state corresponds to is a
reject; the shortest trace leading to it is rebuilt backwards through the
visited pairs. Once an input assignment of the first diagram has a witness,
its remaining pairs are dropped from the queue.
"""

import logging
from collections import deque
from typing import Deque, Dict, List, Optional, Set, Tuple

from ..core.budget import ResourceBudget
from ..core.models.diagram import ActivityDiagram
from ..core.models.diff import CombinedState, DiffTrace, Pair
from ..core.models.state import AdState, Binding
from ..semantics.stepper import StateSpace
from .correspondence import Correspondence

logger = logging.getLogger(__name__)

PairKey = Tuple[AdState, Optional[AdState]]


class ConcreteDiff:
    """One run of the explicit algorithm for an ordered pair of diagrams"""

    def __init__(
        self,
        ad1: ActivityDiagram,
        ad2: ActivityDiagram,
        state_budget: Optional[int] = None,
        max_traces: Optional[int] = None,
    ):
        """
        Initialize the search

        Args:
            ad1: Diagram whose traces are looked for
            ad2: Diagram that must follow them
            state_budget: Maximum number of visited pairs, None for unlimited
            max_traces: Stop after this many witnesses, None for all
        """
        self.ad1 = ad1
        self.ad2 = ad2
        self.corr = Correspondence(ad1, ad2)
        self.space1 = StateSpace(ad1)
        self.space2 = StateSpace(ad2)
        self.budget = ResourceBudget(state_budget, resource="states", name=f"concrete {ad1.name}->{ad2.name}")
        self.max_traces = max_traces

        self.visited: Dict[PairKey, Pair] = {}
        self.queue: Deque[Pair] = deque()
        self.rejects: List[Pair] = []
        self.rejected_inputs: Set[Tuple[Binding, ...]] = set()

    def _visit(self, pair: Pair) -> None:
        self.visited[pair.key()] = pair
        self.queue.append(pair)
        self.budget.consume()

    def _reject(self, pair: Pair) -> None:
        self.rejects.append(pair)
        self.rejected_inputs.add(pair.cur1.inputs)
        self._purge(pair.cur1.inputs)

    def _purge(self, inputs: Tuple[Binding, ...]) -> None:
        before = len(self.queue)
        self.queue = deque(p for p in self.queue if p.cur1.inputs != inputs)
        if before != len(self.queue):
            logger.debug(f"purged {before - len(self.queue)} pairs after a reject")

    def _done(self, decide_only: bool) -> bool:
        if not self.rejects:
            return False
        if decide_only:
            return True
        return self.max_traces is not None and len(self.rejects) >= self.max_traces

    def _initialize(self, decide_only: bool) -> None:
        initials2 = self.space2.initial_states()
        for ini1 in self.space1.initial_states():
            partners = [ini2 for ini2 in initials2 if self.corr(ini1, ini2)]
            if not partners:
                self._reject(Pair(cur1=ini1))
                if self._done(decide_only):
                    return
                continue
            for ini2 in partners:
                self._visit(Pair(cur1=ini1, cur2=ini2))

    def _traverse(self, decide_only: bool) -> None:
        while self.queue:
            pair = self.queue.popleft()
            for next1 in self.space1.successors(pair.cur1):
                matches = [next2 for next2 in self.space2.successors(pair.cur2) if self.corr(next1, next2)]
                if not matches:
                    self._reject(Pair(cur1=next1, pre1=pair.cur1, pre2=pair.cur2))
                    break
                for next2 in matches:
                    if (next1, next2) not in self.visited:
                        self._visit(Pair(cur1=next1, cur2=next2, pre1=pair.cur1, pre2=pair.cur2))
            if self._done(decide_only):
                return

    def trace(self, reject: Pair) -> DiffTrace:
        """
        Rebuild the witness of a reject by following predecessors backwards.

        Args:
            reject: A rejecting pair

        Returns:
            The diff trace ending in the reject
        """
        steps = [CombinedState(reject.cur1, None)]
        key: Optional[PairKey] = (reject.pre1, reject.pre2) if reject.pre1 is not None else None
        while key is not None:
            pair = self.visited[key]
            steps.append(CombinedState(pair.cur1, pair.cur2))
            key = (pair.pre1, pair.pre2) if pair.pre1 is not None else None
        steps.reverse()
        return DiffTrace(tuple(steps), ad1=self.ad1.name, ad2=self.ad2.name)

    def run(self, decide_only: bool = False) -> List[DiffTrace]:
        """
        Compute the witnesses, shortest first per input assignment.

        Args:
            decide_only: Stop at the first reject

        Returns:
            Diff traces ordered by their initial state

        Raises:
            BudgetExceededError: If more pairs are visited than the budget allows
        """
        self._initialize(decide_only)
        if not self._done(decide_only):
            self._traverse(decide_only)

        rejects = self.rejects
        if self.max_traces is not None and len(rejects) > self.max_traces:
            rejects = rejects[: self.max_traces]
        traces = [self.trace(reject) for reject in rejects]
        traces.sort(key=lambda trace: trace.steps[0].s1.sort_key())
        logger.debug(
            f"{self.ad1.name} -> {self.ad2.name}: {len(self.visited)} pairs visited, {len(traces)} witnesses"
        )
        return traces


def concrete_addiff(
    ad1: ActivityDiagram,
    ad2: ActivityDiagram,
    max_traces: Optional[int] = None,
    decide_only: bool = False,
    state_budget: Optional[int] = None,
) -> List[DiffTrace]:
    """
    Diff traces of ad1 against ad2 computed by explicit search.

    Args:
        ad1: Diagram whose traces are looked for
        ad2: Diagram that must follow them
        max_traces: Stop after this many witnesses
        decide_only: Stop at the first witness
        state_budget: Maximum number of visited pairs

    Returns:
        One shortest diff trace per input assignment of ad1 that has one
    """
    return ConcreteDiff(ad1, ad2, state_budget=state_budget, max_traces=max_traces).run(decide_only)
