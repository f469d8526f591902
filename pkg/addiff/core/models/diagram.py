"""
Activity diagram data models.

Provides Pydantic v2 models for variable domains, declarations, nodes,
transitions and whole diagrams. The models are frozen: every edit (for
example a benchmark mutation) produces a new diagram via model_copy.
"""

from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from .enums import DomainKind, NodeKind, VarKind
from .expr import TRUE, EnumLiteral, Expr, ExprType, Value, value_type


class Domain(BaseModel):
    """A finite variable domain: boolean, bounded integer or enumeration."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: DomainKind = Field(description="Shape of the domain")
    lo: Optional[int] = Field(None, description="Lower bound (integer domains)")
    hi: Optional[int] = Field(None, description="Upper bound (integer domains)")
    literals: Tuple[str, ...] = Field(
        default=(), description="Literals in declaration order (enumerations)"
    )

    @classmethod
    def boolean(cls) -> "Domain":
        return cls(kind=DomainKind.BOOL)

    @classmethod
    def integer(cls, lo: int, hi: int) -> "Domain":
        return cls(kind=DomainKind.INT, lo=lo, hi=hi)

    @classmethod
    def enumeration(cls, *literals: str) -> "Domain":
        return cls(kind=DomainKind.ENUM, literals=tuple(literals))

    @property
    def cardinality(self) -> int:
        if self.kind is DomainKind.BOOL:
            return 2
        if self.kind is DomainKind.INT:
            if self.lo is None or self.hi is None:
                return 0
            return max(0, self.hi - self.lo + 1)
        return len(self.literals)

    @property
    def value_type(self) -> ExprType:
        if self.kind is DomainKind.ENUM:
            return ExprType(DomainKind.ENUM, self.literals)
        return ExprType(self.kind)

    def values(self) -> List[Value]:
        """All values in canonical order."""
        if self.kind is DomainKind.BOOL:
            return [False, True]
        if self.kind is DomainKind.INT:
            return list(range(self.lo, self.hi + 1)) if self.cardinality else []
        return [self.literal(name) for name in self.literals]

    @property
    def minimum(self) -> Value:
        return self.values()[0]

    def literal(self, name: str) -> EnumLiteral:
        return EnumLiteral(self.literals.index(name), name, self.literals)

    def contains(self, value: Value) -> bool:
        if value_type(value) != self.value_type:
            return False
        if self.kind is DomainKind.INT:
            return self.lo <= value <= self.hi
        return True

    def index_of(self, value: Value) -> int:
        """Position of a value in values()."""
        if self.kind is DomainKind.BOOL:
            return int(value)
        if self.kind is DomainKind.INT:
            return value - self.lo
        return value.index

    def __str__(self) -> str:
        if self.kind is DomainKind.BOOL:
            return "bool"
        if self.kind is DomainKind.INT:
            return f"{self.lo}..{self.hi}"
        return "enum { " + ", ".join(self.literals) + " }"


class VarDecl(BaseModel):
    """Declaration of an input or local variable."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(min_length=1, description="Variable name")
    domain: Domain = Field(description="Finite domain of the variable")
    kind: VarKind = Field(description="input or local")


class Assignment(BaseModel):
    """Assignment of an expression to a local variable inside an action node."""

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    var: str = Field(min_length=1, description="Assigned local variable")
    expr: Expr = Field(description="Assigned expression, read on the pre-state")


class Node(BaseModel):
    """An action node or a pseudo node."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str = Field(min_length=1, description="Unique node identifier")
    kind: NodeKind = Field(description="Node kind")
    action_name: Optional[str] = Field(None, description="Action name (action nodes only)")
    assignments: Tuple[Assignment, ...] = Field(
        default=(), description="Ordered local-variable assignments (action nodes only)"
    )

    @field_validator("kind", mode="before")
    @classmethod
    def normalize_kind(cls, v: Any) -> Any:
        """Accept node kind keywords as strings."""
        if isinstance(v, str):
            return NodeKind.normalize(v) or v
        return v

    @property
    def is_action(self) -> bool:
        return self.kind is NodeKind.ACTION


class Transition(BaseModel):
    """A guarded transition between two nodes."""

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    src: str = Field(min_length=1, description="Source node id")
    trg: str = Field(min_length=1, description="Target node id")
    guard: Expr = Field(default=TRUE, description="Boolean guard (decision edges only)")

    @property
    def label(self) -> str:
        return f"{self.src}->{self.trg}"

    @property
    def has_guard(self) -> bool:
        return self.guard != TRUE


class ActivityDiagram(BaseModel):
    """An activity diagram: declarations, nodes and transitions."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(min_length=1, description="Diagram name")
    input_vars: Tuple[VarDecl, ...] = Field(default=(), description="Input variables")
    local_vars: Tuple[VarDecl, ...] = Field(default=(), description="Local variables")
    nodes: Tuple[Node, ...] = Field(default=(), description="Action and pseudo nodes")
    transitions: Tuple[Transition, ...] = Field(default=(), description="Transitions")

    @computed_field
    @property
    def actions(self) -> FrozenSet[str]:
        """The action alphabet of the diagram."""
        return frozenset(
            node.action_name for node in self.nodes if node.is_action and node.action_name is not None
        )

    @property
    def variables(self) -> Tuple[VarDecl, ...]:
        return self.input_vars + self.local_vars

    def node(self, node_id: str) -> Node:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise KeyError(node_id)

    def has_node(self, node_id: str) -> bool:
        return any(node.id == node_id for node in self.nodes)

    def node_map(self) -> Dict[str, Node]:
        return {node.id: node for node in self.nodes}

    def nodes_of_kind(self, kind: NodeKind) -> List[Node]:
        return [node for node in self.nodes if node.kind is kind]

    def decl(self, name: str) -> Optional[VarDecl]:
        for decl in self.variables:
            if decl.name == name:
                return decl
        return None

    def outgoing(self, node_id: str) -> List[int]:
        """Indices of transitions leaving a node, in declaration order."""
        return [i for i, t in enumerate(self.transitions) if t.src == node_id]

    def incoming(self, node_id: str) -> List[int]:
        """Indices of transitions entering a node, in declaration order."""
        return [i for i, t in enumerate(self.transitions) if t.trg == node_id]


def action_alphabet(ad: ActivityDiagram) -> FrozenSet[str]:
    """Return the set of action names of a diagram."""
    return ad.actions
