"""
Records produced by the differencing algorithms.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .expr import Value
from .state import AdState


@dataclass(frozen=True, eq=False)
class Pair:
    """
    Bookkeeping record of the explicit search: the current states of both
    diagrams and their predecessors. Equality and hashing only look at the
    current states.
    """

    cur1: AdState
    cur2: Optional[AdState] = None
    pre1: Optional[AdState] = None
    pre2: Optional[AdState] = None

    def key(self) -> Tuple[AdState, Optional[AdState]]:
        return (self.cur1, self.cur2)

    @property
    def is_rejecting(self) -> bool:
        return self.cur2 is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pair):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True)
class CombinedState:
    """One step of a diff trace; s2 is absent only in the last step"""

    s1: AdState
    s2: Optional[AdState] = None


@dataclass(frozen=True)
class DiffTrace:
    """A shortest execution of ad1 that ad2 cannot follow to the last step"""

    steps: Tuple[CombinedState, ...]
    ad1: str = ""
    ad2: str = ""

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def direction(self) -> str:
        return f"{self.ad1} -> {self.ad2}"

    @property
    def inputs(self) -> Tuple[Tuple[str, Value], ...]:
        """The ad1 input assignment the trace starts from."""
        return self.steps[0].s1.inputs

    def ad1_states(self) -> List[AdState]:
        return [step.s1 for step in self.steps]

    def ad2_states(self) -> List[AdState]:
        return [step.s2 for step in self.steps if step.s2 is not None]

    def actions(self) -> Tuple[str, ...]:
        return tuple(step.s1.ac for step in self.steps)

    def node_ids(self, side: int = 1) -> List[str]:
        states = self.ad1_states() if side == 1 else self.ad2_states()
        return [state.acnode for state in states]


@dataclass
class FixpointMemory:
    """The growing sets of the backward fixpoint, one per iteration"""

    sets: List[Any] = field(default_factory=list)
    converged: bool = False

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def last(self) -> Any:
        return self.sets[-1]

    def append(self, symbolic_set: Any) -> None:
        self.sets.append(symbolic_set)

    def stats(self) -> Dict[str, Any]:
        return {"iterations": len(self.sets), "converged": self.converged}
