"""
Data models for activity diagrams, semantics states, diff traces and reports.
"""

from .base import (
    AdDiffError,
    AdParseError,
    BudgetExceededError,
    Diagnostic,
    DiagramValidationError,
    ExpressionError,
    IncomparableInputsError,
    InvalidMutationError,
    StabilizationError,
    StateConstructionError,
    TraceMismatchError,
)
from .diagram import ActivityDiagram, Assignment, Domain, Node, Transition, VarDecl, action_alphabet
from .diff import CombinedState, DiffTrace, FixpointMemory, Pair
from .enums import (
    Algorithm,
    CompareResult,
    DomainKind,
    LinearVariant,
    MutationKind,
    NodeKind,
    OutputFormat,
    PrimeDirection,
    Rule,
    VarKind,
)
from .expr import (
    TRUE,
    BinOp,
    Const,
    EnumLiteral,
    Expr,
    ExprType,
    Not,
    Value,
    Var,
    evaluate,
    format_expr,
    free_vars,
    type_check,
)
from .report import BenchRow, DiffReport, EvolutionReport, EvolutionStep, Witness
from .state import FIN_LABEL, INIT_LABEL, AdState, Trace

__all__ = [
    # Errors and diagnostics
    "AdDiffError",
    "AdParseError",
    "BudgetExceededError",
    "Diagnostic",
    "DiagramValidationError",
    "ExpressionError",
    "IncomparableInputsError",
    "InvalidMutationError",
    "StabilizationError",
    "StateConstructionError",
    "TraceMismatchError",
    # Enums
    "Algorithm",
    "CompareResult",
    "DomainKind",
    "LinearVariant",
    "MutationKind",
    "NodeKind",
    "OutputFormat",
    "PrimeDirection",
    "Rule",
    "VarKind",
    # Expressions
    "TRUE",
    "BinOp",
    "Const",
    "EnumLiteral",
    "Expr",
    "ExprType",
    "Not",
    "Value",
    "Var",
    "evaluate",
    "format_expr",
    "free_vars",
    "type_check",
    # Diagrams
    "ActivityDiagram",
    "Assignment",
    "Domain",
    "Node",
    "Transition",
    "VarDecl",
    "action_alphabet",
    # Semantics and diff records
    "AdState",
    "Trace",
    "INIT_LABEL",
    "FIN_LABEL",
    "Pair",
    "CombinedState",
    "DiffTrace",
    "FixpointMemory",
    # Reports
    "BenchRow",
    "DiffReport",
    "EvolutionReport",
    "EvolutionStep",
    "Witness",
]
