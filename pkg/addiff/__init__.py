"""
Semantic differencing of activity diagrams.

Computes diff witnesses, execution traces one diagram admits and another
does not, with an explicit-state and a symbolic algorithm.
"""

__version__ = "1.0.0"

from .analyzers import (  # noqa: E402
    DiffOrchestrator,
    addiff,
    analyze_history,
    compare,
    concrete_addiff,
    has_difference,
    symbolic_addiff,
)
from .core.models import ActivityDiagram, CompareResult, DiffTrace  # noqa: E402
from .core.text import parse, parse_or_raise, serialize  # noqa: E402

__all__ = [
    "ActivityDiagram",
    "CompareResult",
    "DiffOrchestrator",
    "DiffTrace",
    "addiff",
    "analyze_history",
    "compare",
    "concrete_addiff",
    "has_difference",
    "parse",
    "parse_or_raise",
    "serialize",
    "symbolic_addiff",
]
