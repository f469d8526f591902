"""
States and traces of the operational semantics.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from .expr import Value, format_value, value_sort_key

INIT_LABEL = "⊥init"
FIN_LABEL = "⊥fin"

Binding = Tuple[str, Value]


@dataclass(frozen=True)
class AdState:
    """
    A state of an activity diagram.

    acnode is the last executed node and ac its action label; inputs and
    local_values hold the valuation in declaration order; marking lists the
    indices of the transitions holding a token, sorted and already
    stabilized (pseudo nodes have fired).
    """

    acnode: str
    ac: str
    inputs: Tuple[Binding, ...]
    local_values: Tuple[Binding, ...]
    marking: Tuple[int, ...]

    @property
    def env(self) -> Dict[str, Value]:
        return dict(self.inputs + self.local_values)

    @property
    def is_initial(self) -> bool:
        return self.ac == INIT_LABEL

    @property
    def is_final(self) -> bool:
        return self.ac == FIN_LABEL

    def input_values(self) -> Tuple[Value, ...]:
        return tuple(value for _, value in self.inputs)

    def sort_key(self) -> Tuple[Any, ...]:
        """Canonical order: node id, then valuation, then marking."""
        return (
            self.acnode,
            tuple(value_sort_key(value) for _, value in self.inputs + self.local_values),
            self.marking,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "node": self.acnode,
            "action": self.ac,
            "vars": {name: format_value(value) for name, value in self.inputs + self.local_values},
        }

    def __str__(self) -> str:
        values = ", ".join(f"{name}={format_value(value)}" for name, value in self.inputs + self.local_values)
        return f"{self.ac}@{self.acnode}[{values}]"


@dataclass(frozen=True)
class Trace:
    """A non-empty sequence of states starting in an initial state"""

    states: Tuple[AdState, ...]

    def __len__(self) -> int:
        return len(self.states)

    @property
    def last(self) -> AdState:
        return self.states[-1]

    def actions(self) -> List[str]:
        return [state.ac for state in self.states]

    def extend(self, state: AdState) -> "Trace":
        return Trace(self.states + (state,))
