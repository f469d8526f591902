"""
Analyzers: well-formedness, correspondence and the differencing algorithms.
"""

from .wellformed import check_guard_exclusivity, ensure_well_formed, validate  # noqa: I001
from .correspondence import Correspondence, corresponding
from .concrete import ConcreteDiff, concrete_addiff
from .symbolic import SymbolicDiff, symbolic_addiff
from .conformance import check_diff_trace, is_prefix_minimal, shortest_diff_lengths
from .orchestrator import DiffOrchestrator, addiff, analyze_history, compare, has_difference

__all__ = [
    "ConcreteDiff",
    "Correspondence",
    "DiffOrchestrator",
    "SymbolicDiff",
    "addiff",
    "analyze_history",
    "check_diff_trace",
    "check_guard_exclusivity",
    "compare",
    "concrete_addiff",
    "corresponding",
    "ensure_well_formed",
    "has_difference",
    "is_prefix_minimal",
    "shortest_diff_lengths",
    "symbolic_addiff",
    "validate",
]
