"""
Enums for categorical values used across the activity diagram toolkit.

Defines node kinds, variable kinds, domain kinds, diagnostic rule names,
comparison outcomes and the user-facing switches of the command line.
"""

from enum import Enum
from typing import Optional


class NodeKind(str, Enum):
    """Kind of an activity diagram node."""

    ACTION = "action"
    INITIAL = "initial"
    FINAL = "final"
    DECISION = "decision"
    MERGE = "merge"
    FORK = "fork"
    JOIN = "join"

    @classmethod
    def normalize(cls, kind_input: Optional[str]) -> Optional["NodeKind"]:
        """
        Normalize a node kind keyword to the enum value.

        Args:
            kind_input: Raw keyword, case-insensitive

        Returns:
            NodeKind value or None if the keyword is unknown
        """
        if not kind_input:
            return None

        kind_lower = kind_input.lower().strip()
        for kind in cls:
            if kind.value == kind_lower:
                return kind

        return None

    @property
    def is_pseudo(self) -> bool:
        """Every node that does not execute an action is a pseudo node."""
        return self is not NodeKind.ACTION

    @property
    def is_routing(self) -> bool:
        """Pseudo nodes that forward tokens during stabilization."""
        return self in (NodeKind.DECISION, NodeKind.MERGE, NodeKind.FORK, NodeKind.JOIN)


class VarKind(str, Enum):
    """Whether a variable is chosen by the environment or owned by the diagram."""

    INPUT = "input"
    LOCAL = "local"


class DomainKind(str, Enum):
    """Shape of a finite variable domain."""

    BOOL = "bool"
    INT = "int"
    ENUM = "enum"


class Rule(str, Enum):
    """Names of the well-formedness rules reported in diagnostics."""

    DUPLICATE_NODE = "duplicate-node"
    DUPLICATE_VARIABLE = "duplicate-variable"
    UNKNOWN_ENDPOINT = "unknown-endpoint"
    INITIAL_COUNT = "initial-count"
    FINAL_MISSING = "final-missing"
    INITIAL_INCOMING = "initial-incoming"
    INITIAL_OUTGOING = "initial-outgoing"
    FINAL_OUTGOING = "final-outgoing"
    ADJACENT_PSEUDO = "adjacent-pseudo-nodes"
    GUARD_ON_NON_DECISION = "guard-on-non-decision"
    ARITY = "arity"
    ACTION_NAME = "action-name"
    ASSIGNMENT_ON_PSEUDO = "assignment-on-pseudo-node"
    FORK_JOIN_BALANCE = "fork-join-balance"
    FORK_REGION_ENTRY = "fork-region-entry"
    REPEATED_FORK_ACTION = "repeated-fork-action"
    LOCAL_NOT_INITIALIZED = "local-not-initialized"
    ASSIGNMENT_TO_INPUT = "assignment-to-input"
    UNDECLARED_VARIABLE = "undeclared-variable"
    TYPE_MISMATCH = "type-mismatch"
    INVALID_DOMAIN = "invalid-domain"
    GUARD_OVERLAP = "guard-overlap"
    GUARD_NOT_EXHAUSTIVE = "guard-not-exhaustive"


class CompareResult(str, Enum):
    """Outcome of comparing two diagrams in both directions."""

    LESS = "<"
    GREATER = ">"
    EQUIVALENT = "≡"
    INCOMPARABLE = "<>"

    @classmethod
    def normalize(cls, result_input: Optional[str]) -> Optional["CompareResult"]:
        """
        Normalize a comparison symbol, accepting ASCII spellings.

        Args:
            result_input: Raw symbol such as "<", "==" or "<>"

        Returns:
            CompareResult value or None if unknown
        """
        if not result_input:
            return None

        symbol = result_input.strip().lower()
        symbol_map = {
            "<": cls.LESS,
            "less": cls.LESS,
            ">": cls.GREATER,
            "greater": cls.GREATER,
            "≡": cls.EQUIVALENT,
            "==": cls.EQUIVALENT,
            "=": cls.EQUIVALENT,
            "equivalent": cls.EQUIVALENT,
            "<>": cls.INCOMPARABLE,
            "incomparable": cls.INCOMPARABLE,
        }
        return symbol_map.get(symbol)

    @classmethod
    def from_directions(cls, forward: bool, backward: bool) -> "CompareResult":
        """
        Derive the comparison from the emptiness of both directions.

        Args:
            forward: Whether the first diagram has traces the second lacks
            backward: Whether the second diagram has traces the first lacks

        Returns:
            The matching CompareResult
        """
        if forward and backward:
            return cls.INCOMPARABLE
        if forward:
            return cls.GREATER
        if backward:
            return cls.LESS
        return cls.EQUIVALENT

    @property
    def is_different(self) -> bool:
        return self is not CompareResult.EQUIVALENT

    def reversed(self) -> "CompareResult":
        """The result of the same comparison with swapped operands."""
        if self is CompareResult.LESS:
            return CompareResult.GREATER
        if self is CompareResult.GREATER:
            return CompareResult.LESS
        return self


class Algorithm(str, Enum):
    """Differencing algorithm."""

    CONCRETE = "concrete"
    SYMBOLIC = "symbolic"

    @classmethod
    def normalize(cls, algorithm_input: Optional[str]) -> "Algorithm":
        """
        Normalize an algorithm name; unknown or empty input selects symbolic.

        Args:
            algorithm_input: Raw algorithm name

        Returns:
            Algorithm value
        """
        if not algorithm_input:
            return cls.SYMBOLIC

        name = algorithm_input.lower().strip()
        if name in ("concrete", "explicit", "bfs"):
            return cls.CONCRETE
        return cls.SYMBOLIC


class OutputFormat(str, Enum):
    """Output formats of the command line."""

    TEXT = "text"
    JSON = "json"
    DOT = "dot"
    SMV = "smv"


class MutationKind(str, Enum):
    """Synthetic mutations applied to action nodes."""

    RENAME = "rename"
    DELETE = "delete"
    MOVE = "move"


class LinearVariant(str, Enum):
    """Where the branching variable of a linear benchmark diagram lives."""

    INPUT = "input"
    LOCAL = "local"


class PrimeDirection(str, Enum):
    """Direction of a current/next variable renaming."""

    TO_PRIMED = "to-primed"
    TO_UNPRIMED = "to-unprimed"
