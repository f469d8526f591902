"""
Diff Orchestrator

Coordinates validation, the two differencing algorithms and the derived
analyses:
- addiff: witnesses of one direction, concrete or symbolic
- has_difference: the decision-only variant
- compare: both directions, folded into <, >, ≡ or <>
- analyze_history: compare along a list of versions
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.config import Settings
from ..core.models.diagram import ActivityDiagram
from ..core.models.diff import DiffTrace
from ..core.models.enums import Algorithm, CompareResult
from ..core.models.report import DiffReport, EvolutionReport, EvolutionStep
from .concrete import ConcreteDiff
from .symbolic import SymbolicDiff
from .wellformed import ensure_well_formed

logger = logging.getLogger(__name__)


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


class DiffOrchestrator:
    """
    Runs semantic differencing between activity diagrams
    """

    def __init__(self, settings: Optional[Settings] = None, validate: bool = True):
        """
        Initialize the orchestrator

        Args:
            settings: Budgets, default algorithm and worker count; read from the environment if omitted
            validate: Check every diagram for well-formedness before differencing
        """
        self.settings = settings or Settings.from_env()
        self.validate = validate
        self._validated: Dict[int, ActivityDiagram] = {}

        logger.info(
            f"DiffOrchestrator initialized (algorithm={self.settings.algorithm.value}, "
            f"workers={self.settings.max_workers})"
        )

    def _checked(self, ad: ActivityDiagram) -> ActivityDiagram:
        if not self.validate or id(ad) in self._validated:
            return ad
        ensure_well_formed(ad, self.settings.domain_limit, self.settings.enumeration_limit)
        self._validated[id(ad)] = ad
        return ad

    def _algorithm(self, algorithm: Optional[Algorithm]) -> Algorithm:
        return algorithm or self.settings.algorithm

    def addiff(
        self,
        ad1: ActivityDiagram,
        ad2: ActivityDiagram,
        algorithm: Optional[Algorithm] = None,
        max_traces: Optional[int] = None,
        decide_only: bool = False,
    ) -> List[DiffTrace]:
        """
        Compute the diff traces of ad1 against ad2

        Args:
            ad1: Diagram whose traces are looked for
            ad2: Diagram that must follow them
            algorithm: Concrete or symbolic, the configured default if omitted
            max_traces: Stop after this many witnesses
            decide_only: Stop as soon as a difference is known

        Returns:
            One shortest diff trace per input assignment of ad1 that has one
        """
        ad1, ad2 = self._checked(ad1), self._checked(ad2)
        algorithm = self._algorithm(algorithm)
        if algorithm is Algorithm.CONCRETE:
            engine = ConcreteDiff(ad1, ad2, state_budget=self.settings.state_budget, max_traces=max_traces)
        else:
            engine = SymbolicDiff(ad1, ad2, node_budget=self.settings.node_budget, max_traces=max_traces)
        return engine.run(decide_only=decide_only)

    def has_difference(
        self, ad1: ActivityDiagram, ad2: ActivityDiagram, algorithm: Optional[Algorithm] = None
    ) -> bool:
        """True iff ad1 has a trace that ad2 cannot follow"""
        ad1, ad2 = self._checked(ad1), self._checked(ad2)
        if self._algorithm(algorithm) is Algorithm.CONCRETE:
            return bool(ConcreteDiff(ad1, ad2, state_budget=self.settings.state_budget).run(decide_only=True))
        return SymbolicDiff(ad1, ad2, node_budget=self.settings.node_budget).has_difference()

    def diff_report(
        self,
        ad1: ActivityDiagram,
        ad2: ActivityDiagram,
        algorithm: Optional[Algorithm] = None,
        decide_only: bool = False,
        max_traces: Optional[int] = None,
    ) -> DiffReport:
        """
        Run one direction and time the decision and the full witness computation

        Args:
            ad1: Diagram whose traces are looked for
            ad2: Diagram that must follow them
            algorithm: Concrete or symbolic
            decide_only: Skip the witness computation
            max_traces: Stop after this many witnesses

        Returns:
            DiffReport with witnesses (none in decide-only mode) and timings
        """
        algorithm = self._algorithm(algorithm)
        ad1, ad2 = self._checked(ad1), self._checked(ad2)
        logger.info(f"Diffing {ad1.name} -> {ad2.name} ({algorithm.value})")

        start = time.perf_counter()
        different = self.has_difference(ad1, ad2, algorithm)
        decide_ms = _elapsed_ms(start)

        if decide_only:
            report = DiffReport(
                direction=f"{ad1.name} -> {ad2.name}",
                algorithm=algorithm,
                decide_only=True,
                has_difference=different,
                witness_count=0,
                timings={"decide_ms": decide_ms, "total_ms": decide_ms},
            )
        else:
            start = time.perf_counter()
            traces = self.addiff(ad1, ad2, algorithm, max_traces=max_traces) if different else []
            total_ms = decide_ms + _elapsed_ms(start)
            report = DiffReport.from_traces(traces, f"{ad1.name} -> {ad2.name}", algorithm, decide_ms, total_ms)

        logger.info(
            f"Diff {report.direction} completed in {report.timings.total_ms:.1f} ms: "
            f"{'difference' if report.has_difference else 'no difference'}"
        )
        return report

    def compare(
        self, ad1: ActivityDiagram, ad2: ActivityDiagram, algorithm: Optional[Algorithm] = None
    ) -> CompareResult:
        """
        Compare two diagrams in both directions

        Returns:
            ">" if only ad1 has extra traces, "<" if only ad2 has, "≡" if neither, "<>" if both
        """
        ad1, ad2 = self._checked(ad1), self._checked(ad2)
        if self.settings.max_workers > 1:
            with ThreadPoolExecutor(max_workers=2) as executor:
                forward = executor.submit(self.has_difference, ad1, ad2, algorithm)
                backward = executor.submit(self.has_difference, ad2, ad1, algorithm)
                result = CompareResult.from_directions(forward.result(), backward.result())
        else:
            result = CompareResult.from_directions(
                self.has_difference(ad1, ad2, algorithm), self.has_difference(ad2, ad1, algorithm)
            )
        logger.debug(f"compare({ad1.name}, {ad2.name}) = {result.value}")
        return result

    def analyze_history(
        self, ads: Sequence[ActivityDiagram], algorithm: Optional[Algorithm] = None
    ) -> EvolutionReport:
        """
        Compare every pair of consecutive versions

        Args:
            ads: Versions in history order, at least two
            algorithm: Concrete or symbolic

        Returns:
            EvolutionReport with one step per consecutive pair, in order
        """
        if len(ads) < 2:
            raise ValueError("a history needs at least two versions")
        ads = [self._checked(ad) for ad in ads]
        pairs: List[Tuple[ActivityDiagram, ActivityDiagram]] = list(zip(ads, ads[1:]))
        logger.info(f"Analyzing history of {len(ads)} versions")

        start = time.perf_counter()
        with ThreadPoolExecutor(max_workers=self.settings.max_workers) as executor:
            futures = [executor.submit(self.compare, older, newer, algorithm) for older, newer in pairs]
            results = [future.result() for future in futures]

        steps = [
            EvolutionStep(older=older.name, newer=newer.name, result=result)
            for (older, newer), result in zip(pairs, results)
        ]
        logger.info(f"History analyzed in {_elapsed_ms(start):.1f} ms")
        return EvolutionReport(versions=[ad.name for ad in ads], steps=steps)


def addiff(
    ad1: ActivityDiagram,
    ad2: ActivityDiagram,
    algorithm: Algorithm = Algorithm.SYMBOLIC,
    max_traces: Optional[int] = None,
) -> List[DiffTrace]:
    """Diff traces of ad1 against ad2 with default budgets"""
    return DiffOrchestrator(Settings()).addiff(ad1, ad2, algorithm, max_traces=max_traces)


def has_difference(ad1: ActivityDiagram, ad2: ActivityDiagram, algorithm: Algorithm = Algorithm.SYMBOLIC) -> bool:
    return DiffOrchestrator(Settings()).has_difference(ad1, ad2, algorithm)


def compare(ad1: ActivityDiagram, ad2: ActivityDiagram, algorithm: Algorithm = Algorithm.SYMBOLIC) -> CompareResult:
    return DiffOrchestrator(Settings()).compare(ad1, ad2, algorithm)


def analyze_history(
    ads: Sequence[ActivityDiagram], algorithm: Algorithm = Algorithm.SYMBOLIC
) -> List[Tuple[Tuple[str, str], CompareResult]]:
    """Comparison of every consecutive pair of versions, as ((older, newer), result)"""
    report = DiffOrchestrator(Settings()).analyze_history(ads, algorithm)
    return [((step.older, step.newer), step.result) for step in report.steps]
