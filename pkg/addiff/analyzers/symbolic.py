"""
Symbolic differencing over binary decision diagrams.

A backward least fixpoint collects the pairs of states from which the first
diagram can force a non-corresponding step, keeping the set reached after
every iteration. Witnesses are then replayed forward from the initial pairs,
one iteration of the memory per step.
"""

import logging
from typing import List, Optional, Tuple

from ..core.models.base import AdDiffError
from ..core.models.diagram import ActivityDiagram
from ..core.models.diff import CombinedState, DiffTrace, FixpointMemory
from ..core.models.state import AdState
from ..core.symbolic.encoding import JointEncoding
from ..core.symbolic.manager import SymbolicSet

logger = logging.getLogger(__name__)


class SymbolicDiff:
    """One run of the symbolic algorithm for an ordered pair of diagrams"""

    def __init__(
        self,
        ad1: ActivityDiagram,
        ad2: ActivityDiagram,
        node_budget: Optional[int] = None,
        max_traces: Optional[int] = None,
    ):
        """
        Initialize the joint encoding

        Args:
            ad1: Diagram whose traces are looked for
            ad2: Diagram that must follow them
            node_budget: Maximum number of live decision-diagram nodes
            max_traces: Stop after this many witnesses, None for all

        Raises:
            IncomparableInputsError: If a shared input has different domains
            BudgetExceededError: If the encoding alone exceeds the node budget
        """
        self.ad1 = ad1
        self.ad2 = ad2
        self.max_traces = max_traces
        self.encoding = JointEncoding(ad1, ad2, node_budget=node_budget)
        self.manager = self.encoding.manager
        self.side1 = self.encoding.side1
        self.side2 = self.encoding.side2
        self.bits1 = self.side1.layout.state_bits()
        self.bits2 = self.side2.layout.state_bits()
        logger.debug(f"{ad1.name} -> {ad2.name}: {self.encoding.describe()}")

    def orphans(self) -> SymbolicSet:
        """Initial states of the first diagram no initial state of the second corresponds to"""
        matched = self.manager.exists(self.side2.initial & self.encoding.corr, self.bits2)
        return self.side1.initial - matched

    def least_fixpoint_with_mem(self, decide_only: bool = False) -> Tuple[FixpointMemory, bool]:
        """
        Grow the set of pairs that lead to a difference until it is stable.

        Args:
            decide_only: Return as soon as an initial pair is in the set

        Returns:
            The memory of all iterations and whether an initial pair was reached
        """
        enc = self.encoding
        z = ~enc.corr & enc.valid
        memory = FixpointMemory(sets=[z])
        while True:
            p = self.manager.rel_image_pre(z, self.side1.relation, self.side2.relation) & enc.valid
            if decide_only and not (p & enc.initials).is_empty:
                memory.append(z | p)
                return memory, True
            grown = z | p
            if grown == z:
                memory.converged = True
                break
            memory.append(grown)
            z = grown
            logger.debug(f"fixpoint iteration {len(memory) - 1}: {self.manager.node_count} live nodes")
        return memory, not (memory.last & enc.initials).is_empty

    def _first_iteration(self, pairs: SymbolicSet, memory: FixpointMemory) -> int:
        for j in range(1, len(memory)):
            if not (pairs & memory.sets[j]).is_empty:
                return j
        raise AdDiffError("initial pair is outside the fixpoint memory")

    def _replay(self, ini1: AdState, cube1: SymbolicSet, memory: FixpointMemory) -> DiffTrace:
        enc = self.encoding
        pairs = cube1 & enc.initials
        j = self._first_iteration(pairs, memory)
        ini2 = self.side2.pick(self.manager.exists(pairs & memory.sets[j], self.bits1))
        steps = [CombinedState(ini1, ini2)]
        cur1, cur2 = cube1, self.side2.encode(ini2)

        for i in range(j, 0, -1):
            below = memory.sets[i - 1]
            image1 = self.side1.successors_of(cur1)
            image2 = self.side2.successors_of(cur2)
            forced = image1 & self.manager.forall(image2.implies(below), self.bits2)
            next1 = self.side1.pick(forced)
            cube_next1 = self.side1.encode(next1)
            partners = self.manager.exists(cube_next1 & enc.corr & below, self.bits1) & image2
            if partners.is_empty:
                steps.append(CombinedState(next1, None))
                break
            next2 = self.side2.pick(partners)
            steps.append(CombinedState(next1, next2))
            cur1, cur2 = cube_next1, self.side2.encode(next2)
        else:
            raise AdDiffError(f"replay from {ini1} did not end in a difference")

        return DiffTrace(tuple(steps), ad1=self.ad1.name, ad2=self.ad2.name)

    def build_traces_from_mem(self, memory: FixpointMemory) -> List[DiffTrace]:
        """
        Replay one witness per initial state of the first diagram.

        Args:
            memory: Memory of a converged fixpoint

        Returns:
            Diff traces ordered by their initial state
        """
        starts: List[Tuple[AdState, SymbolicSet, bool]] = []
        candidates = self.manager.exists(memory.last & self.encoding.initials, self.bits2)
        for assignment in self.manager.enumerate(candidates, self.bits1):
            starts.append((self.side1.decode(assignment), self.manager.cube(assignment), False))
        for assignment in self.manager.enumerate(self.orphans(), self.bits1):
            starts.append((self.side1.decode(assignment), self.manager.cube(assignment), True))
        starts.sort(key=lambda start: start[0].sort_key())

        if self.max_traces is not None and len(starts) > self.max_traces:
            logger.warning(f"{self.ad1.name} -> {self.ad2.name}: keeping {self.max_traces} of {len(starts)} witnesses")
            starts = starts[: self.max_traces]

        traces = []
        for ini1, cube1, orphan in starts:
            if orphan:
                traces.append(DiffTrace((CombinedState(ini1, None),), ad1=self.ad1.name, ad2=self.ad2.name))
            else:
                traces.append(self._replay(ini1, cube1, memory))
        return traces

    def has_difference(self) -> bool:
        self.encoding.check_assignments()
        if not self.orphans().is_empty:
            return True
        _, found = self.least_fixpoint_with_mem(decide_only=True)
        return found

    def run(self, decide_only: bool = False) -> List[DiffTrace]:
        """
        Compute the witnesses.

        Args:
            decide_only: Stop the fixpoint once an initial pair is reached and
                return a single witness, or nothing

        Returns:
            Diff traces ordered by their initial state

        Raises:
            StateConstructionError: If a reachable assignment leaves its domain
            BudgetExceededError: If the node budget is exceeded
        """
        self.encoding.check_assignments()
        memory, found = self.least_fixpoint_with_mem(decide_only=decide_only)
        logger.debug(f"{self.ad1.name} -> {self.ad2.name}: fixpoint after {len(memory)} iterations")
        if decide_only:
            if not found and self.orphans().is_empty:
                return []
            keep = self.max_traces
            self.max_traces = 1
            try:
                return self.build_traces_from_mem(memory)
            finally:
                self.max_traces = keep
        return self.build_traces_from_mem(memory)


def symbolic_addiff(
    ad1: ActivityDiagram,
    ad2: ActivityDiagram,
    max_traces: Optional[int] = None,
    decide_only: bool = False,
    node_budget: Optional[int] = None,
) -> List[DiffTrace]:
    """
    Diff traces of ad1 against ad2 computed symbolically.

    Args:
        ad1: Diagram whose traces are looked for
        ad2: Diagram that must follow them
        max_traces: Stop after this many witnesses
        decide_only: Stop the fixpoint early and return at most one witness
        node_budget: Maximum number of live decision-diagram nodes

    Returns:
        One shortest diff trace per input assignment of ad1 that has one
    """
    return SymbolicDiff(ad1, ad2, node_budget=node_budget, max_traces=max_traces).run(decide_only)
