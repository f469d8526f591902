"""
Report models for diff, evolution and benchmark results.

Provides Pydantic v2 models with stable JSON field names so a report
written by the command line can be read back and compared.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from .diff import DiffTrace
from .enums import Algorithm, CompareResult
from .expr import format_value
from .state import AdState


class StateView(BaseModel):
    """One diagram's side of a witness step."""

    model_config = ConfigDict(extra="forbid")

    node: str = Field(description="Last executed node")
    action: str = Field(description="Action label of the state")
    vars: Dict[str, str] = Field(default_factory=dict, description="Variable values")

    @classmethod
    def from_state(cls, state: AdState) -> "StateView":
        return cls(
            node=state.acnode,
            action=state.ac,
            vars={name: format_value(value) for name, value in state.inputs + state.local_values},
        )


class WitnessStep(BaseModel):
    """A combined state of a diff trace."""

    model_config = ConfigDict(extra="forbid")

    index: int = Field(ge=0, description="Position in the trace")
    ad1: StateView = Field(description="State of the first diagram")
    ad2: Optional[StateView] = Field(None, description="Corresponding state of the second diagram")


class Witness(BaseModel):
    """A diff trace in report form."""

    model_config = ConfigDict(extra="forbid")

    length: int = Field(ge=1, description="Number of combined states")
    inputs: Dict[str, str] = Field(default_factory=dict, description="Input assignment of the first diagram")
    steps: List[WitnessStep] = Field(default_factory=list, description="Combined states")

    @model_validator(mode="after")
    def check_shape(self) -> "Witness":
        if len(self.steps) != self.length:
            raise ValueError(f"witness length {self.length} does not match {len(self.steps)} steps")
        if self.steps and self.steps[-1].ad2 is not None:
            raise ValueError("the last step of a witness has no second-diagram state")
        return self

    @classmethod
    def from_trace(cls, trace: DiffTrace) -> "Witness":
        steps = [
            WitnessStep(
                index=i,
                ad1=StateView.from_state(step.s1),
                ad2=StateView.from_state(step.s2) if step.s2 is not None else None,
            )
            for i, step in enumerate(trace.steps)
        ]
        return cls(
            length=len(trace),
            inputs={name: format_value(value) for name, value in trace.inputs},
            steps=steps,
        )

    def actions(self) -> List[str]:
        return [step.ad1.action for step in self.steps]


class Timings(BaseModel):
    """Wall-clock timings in milliseconds."""

    model_config = ConfigDict(extra="forbid")

    decide_ms: float = Field(ge=0, description="Time to decide whether a difference exists")
    total_ms: float = Field(ge=0, description="Time to compute all witnesses")


class DiffReport(BaseModel):
    """Result of one direction of semantic differencing."""

    model_config = ConfigDict(extra="forbid", use_enum_values=False)

    direction: str = Field(description="'<first> -> <second>'")
    algorithm: Algorithm = Field(description="Algorithm used")
    decide_only: bool = Field(default=False, description="Whether witnesses were computed")
    has_difference: bool = Field(description="Whether the first diagram has traces the second lacks")
    witness_count: int = Field(ge=0, description="Number of witnesses")
    witnesses: List[Witness] = Field(default_factory=list, description="Witnesses")
    timings: Timings = Field(description="Decide and total timings")

    @model_validator(mode="after")
    def check_count(self) -> "DiffReport":
        if not self.decide_only and self.witness_count != len(self.witnesses):
            raise ValueError(
                f"witness_count {self.witness_count} differs from {len(self.witnesses)} witnesses"
            )
        return self

    @classmethod
    def from_traces(
        cls,
        traces: List[DiffTrace],
        direction: str,
        algorithm: Algorithm,
        decide_ms: float,
        total_ms: float,
    ) -> "DiffReport":
        return cls(
            direction=direction,
            algorithm=algorithm,
            has_difference=bool(traces),
            witness_count=len(traces),
            witnesses=[Witness.from_trace(trace) for trace in traces],
            timings=Timings(decide_ms=decide_ms, total_ms=total_ms),
        )

    def render_text(self) -> str:
        """Human-readable listing of every witness, step by step."""
        lines = [f"direction: {self.direction}", f"algorithm: {self.algorithm.value}"]
        if self.decide_only:
            lines.append(f"difference: {'yes' if self.has_difference else 'no'}")
        else:
            lines.append(f"witnesses: {self.witness_count}")
        for number, witness in enumerate(self.witnesses, start=1):
            inputs = ", ".join(f"{name}={value}" for name, value in witness.inputs.items())
            lines.append(f"witness {number} (length {witness.length}) inputs: {inputs or '-'}")
            for step in witness.steps:
                left = _render_view(step.ad1)
                right = _render_view(step.ad2) if step.ad2 is not None else "(no corresponding state)"
                lines.append(f"  {step.index}: {left} | {right}")
        lines.append(
            f"timings: decide {self.timings.decide_ms:.1f} ms, total {self.timings.total_ms:.1f} ms"
        )
        return "\n".join(lines)


def _render_view(view: StateView) -> str:
    values = ", ".join(f"{name}={value}" for name, value in view.vars.items())
    return f"{view.action} @{view.node}" + (f" [{values}]" if values else "")


class EvolutionStep(BaseModel):
    """Comparison of two consecutive versions."""

    # the derived label is dropped when a report is read back
    model_config = ConfigDict(extra="ignore")

    older: str = Field(description="Earlier version")
    newer: str = Field(description="Later version")
    result: CompareResult = Field(description="Comparison outcome")

    @computed_field
    @property
    def label(self) -> str:
        return f"{self.older} {self.result.value} {self.newer}"


class EvolutionReport(BaseModel):
    """Comparison outcomes along a version history."""

    model_config = ConfigDict(extra="forbid")

    versions: List[str] = Field(min_length=2, description="Version names in history order")
    steps: List[EvolutionStep] = Field(default_factory=list, description="One entry per consecutive pair")

    @model_validator(mode="after")
    def check_length(self) -> "EvolutionReport":
        if len(self.steps) != len(self.versions) - 1:
            raise ValueError("an evolution report has one step per consecutive version pair")
        return self

    def results(self) -> List[CompareResult]:
        return [step.result for step in self.steps]

    def render_text(self) -> str:
        return "\n".join(step.label for step in self.steps)


class BenchRow(BaseModel):
    """One row of the scalability table."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(description="Benchmark instance")
    nodes: str = Field(description="Node counts of both diagrams, 'n1/n2'")
    states: str = Field(description="Reachable state counts of both diagrams, 's1/s2'")
    witnesses: int = Field(ge=0, description="Number of witnesses")
    sequences: int = Field(ge=0, description="Distinct action sequences among witnesses")
    shortest: int = Field(ge=0, description="Shortest witness length")
    longest: int = Field(ge=0, description="Longest witness length")
    concrete_decide_ms: Optional[float] = Field(None, description="Concrete decide time")
    concrete_all_ms: Optional[float] = Field(None, description="Concrete total time")
    symbolic_decide_ms: Optional[float] = Field(None, description="Symbolic decide time")
    symbolic_all_ms: Optional[float] = Field(None, description="Symbolic total time")
    agree: bool = Field(default=True, description="Both algorithms agree on counts and lengths")
