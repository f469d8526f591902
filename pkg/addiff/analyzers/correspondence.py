"""
Correspondence between states of two activity diagrams.

Two states correspond when they carry the same action label and agree on
every input variable both diagrams declare. Local variables and markings are
not observable.
"""

from typing import Dict, Optional, Sequence

from ..core.models.base import IncomparableInputsError
from ..core.models.diagram import ActivityDiagram
from ..core.models.state import AdState
from ..core.symbolic.encoding import check_shared_inputs


class Correspondence:
    """The correspondence relation of one ordered pair of diagrams"""

    def __init__(self, ad1: ActivityDiagram, ad2: ActivityDiagram):
        """
        Initialize the relation

        Args:
            ad1: First diagram
            ad2: Second diagram

        Raises:
            IncomparableInputsError: If a shared input has different domains
        """
        self.ad1 = ad1
        self.ad2 = ad2
        self.shared = tuple(check_shared_inputs(ad1, ad2))

    def __call__(self, s1: AdState, s2: AdState) -> bool:
        return corresponding(s1, s2, self.shared)

    def observation(self, state: AdState) -> tuple:
        """What the relation sees of a state: its label and shared inputs"""
        values = dict(state.inputs)
        return (state.ac,) + tuple(values[name] for name in self.shared)


def corresponding(s1: AdState, s2: AdState, shared: Optional[Sequence[str]] = None) -> bool:
    """
    Decide whether two states correspond.

    Args:
        s1: State of the first diagram
        s2: State of the second diagram
        shared: Names of the shared inputs; defaults to the input names both states carry

    Returns:
        True iff the labels match and every shared input has the same value

    Raises:
        IncomparableInputsError: If a shared input holds values of different types
    """
    if s1.ac != s2.ac:
        return False
    values1: Dict[str, object] = dict(s1.inputs)
    values2: Dict[str, object] = dict(s2.inputs)
    names = shared if shared is not None else [name for name in values1 if name in values2]
    for name in names:
        left, right = values1[name], values2[name]
        if type(left) is not type(right):
            raise IncomparableInputsError(
                f"input '{name}' holds {left!r} in one diagram and {right!r} in the other",
                variable=name,
            )
        if left != right:
            return False
    return True
