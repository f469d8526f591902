"""
Base records and the exception hierarchy of the toolkit.

Diagnostics are plain values returned by the checkers; everything that
aborts a computation derives from AdDiffError.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .enums import Rule


@dataclass(frozen=True)
class Diagnostic:
    """A single well-formedness violation"""

    rule: Rule
    element: str
    message: str
    # variable/value pairs of a satisfying assignment, if the rule has one
    witness: Tuple[Tuple[str, Any], ...] = ()

    def sort_key(self) -> Tuple[str, str, str]:
        return (self.rule.value, self.element, self.message)

    def witness_dict(self) -> Dict[str, Any]:
        return dict(self.witness)

    def to_dict(self) -> Dict[str, Any]:
        """Convert diagnostic to dictionary"""
        return {
            "rule": self.rule.value,
            "element": self.element,
            "message": self.message,
            "witness": {name: str(value) for name, value in self.witness},
        }

    def __str__(self) -> str:
        text = f"[{self.rule.value}] {self.element}: {self.message}"
        if self.witness:
            values = ", ".join(f"{name}={value}" for name, value in self.witness)
            text += f" (witness: {values})"
        return text


def sorted_diagnostics(diagnostics: List[Diagnostic]) -> List[Diagnostic]:
    """Deduplicate and order diagnostics so output is independent of declaration order"""
    return sorted(set(diagnostics), key=Diagnostic.sort_key)


@dataclass(eq=False)
class AdDiffError(Exception):
    """Base exception for all toolkit failures"""

    message: str

    def __str__(self) -> str:
        return self.message


@dataclass(eq=False)
class DiagramValidationError(AdDiffError):
    """Exception raised when a diagram is not well-formed"""

    diagnostics: List[Diagnostic] = field(default_factory=list)

    def __str__(self) -> str:
        if not self.diagnostics:
            return f"Validation error: {self.message}"
        lines = [f"Validation error: {self.message}"]
        lines.extend(f"  {diagnostic}" for diagnostic in self.diagnostics)
        return "\n".join(lines)


@dataclass(eq=False)
class AdParseError(AdDiffError):
    """Exception wrapping the parse errors of a diagram text"""

    errors: List[Any] = field(default_factory=list)
    source: Optional[str] = None

    def __str__(self) -> str:
        prefix = f"{self.source}: " if self.source else ""
        if not self.errors:
            return f"{prefix}{self.message}"
        return "\n".join(f"{prefix}{error}" for error in self.errors)


@dataclass(eq=False)
class ExpressionError(AdDiffError):
    """Exception raised when an expression cannot be evaluated"""

    expression: Optional[str] = None

    def __str__(self) -> str:
        if self.expression:
            return f"Expression error in '{self.expression}': {self.message}"
        return f"Expression error: {self.message}"


@dataclass(eq=False)
class StateConstructionError(AdDiffError):
    """Exception raised when a successor state cannot be built"""

    node: Optional[str] = None
    variable: Optional[str] = None

    def __str__(self) -> str:
        location = ""
        if self.node:
            location += f" at node '{self.node}'"
        if self.variable:
            location += f" for variable '{self.variable}'"
        return f"State construction error{location}: {self.message}"


@dataclass(eq=False)
class StabilizationError(StateConstructionError):
    """Pseudo nodes keep firing without ever reaching an action"""


@dataclass(eq=False)
class BudgetExceededError(AdDiffError):
    """Exception raised when a state or node budget is exhausted"""

    resource: str = "states"
    limit: int = 0


@dataclass(eq=False)
class IncomparableInputsError(AdDiffError):
    """Two diagrams declare an input of the same name over different domains"""

    variable: Optional[str] = None


@dataclass(eq=False)
class TraceMismatchError(AdDiffError):
    """A diff trace references a node the diagram does not declare"""

    node: Optional[str] = None


@dataclass(eq=False)
class InvalidMutationError(AdDiffError):
    """A mutation names a missing target or produces an ill-formed diagram"""

    target: Optional[str] = None
    diagnostics: List[Diagnostic] = field(default_factory=list)

    def __str__(self) -> str:
        text = f"Invalid mutation of '{self.target}': {self.message}"
        for diagnostic in self.diagnostics:
            text += f"\n  {diagnostic}"
        return text


def validate_positive(value: Any, field_name: str, minimum: int = 1) -> int:
    """
    Validate that a numeric parameter is an integer not below a minimum

    Args:
        value: Value to validate
        field_name: Name of the parameter
        minimum: Smallest accepted value

    Returns:
        The validated integer

    Raises:
        ValueError: If value is not an integer or is too small
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"Parameter '{field_name}' must be an integer, got {value!r}")

    if value < minimum:
        raise ValueError(
            f"Parameter '{field_name}' must be at least {minimum}, got {value}"
        )

    return value
