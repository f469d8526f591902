"""
Scalability benchmark over the synthetic diagram families.

Each row pairs a generated diagram with its benchmark mutant and records
sizes, witness statistics and decide/all timings of both algorithms.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..core.budget import ResourceBudget
from ..core.config import Settings
from ..core.models.diagram import ActivityDiagram
from ..core.models.enums import Algorithm, LinearVariant
from ..core.models.report import BenchRow, DiffReport
from ..generators.families import gen_forking, gen_linear
from ..generators.mutations import forking_mutant, linear_mutant
from ..semantics.traces import reachable_states
from .orchestrator import DiffOrchestrator

logger = logging.getLogger(__name__)

BenchInstance = Tuple[str, ActivityDiagram, ActivityDiagram]


def forking_instances(widths: Sequence[int] = (1, 2, 3, 4), length: int = 6) -> List[BenchInstance]:
    instances = []
    for width in widths:
        ad = gen_forking(width, length)
        instances.append((f"forking(W{width}/L{length})", ad, forking_mutant(ad)))
    return instances


def linear_instances(
    length: int = 12,
    domains: Sequence[int] = (16, 32, 64),
    variant: LinearVariant = LinearVariant.LOCAL,
) -> List[BenchInstance]:
    instances = []
    for domain_size in domains:
        ad = gen_linear(length, domain_size, variant)
        instances.append((f"lbl(L{length}/D{domain_size})", ad, linear_mutant(ad)))
    return instances


def _lengths(report: DiffReport) -> List[int]:
    return sorted(witness.length for witness in report.witnesses)


class BenchmarkRunner:
    """
    Runs benchmark instances and collects one BenchRow per instance
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        algorithms: Sequence[Algorithm] = (Algorithm.CONCRETE, Algorithm.SYMBOLIC),
    ):
        """
        Initialize the runner

        Args:
            settings: Budgets and worker count
            algorithms: Algorithms to time on every instance
        """
        self.settings = settings or Settings.from_env()
        self.algorithms = tuple(algorithms)
        self.orchestrator = DiffOrchestrator(self.settings, validate=True)
        logger.info(f"BenchmarkRunner initialized with {', '.join(a.value for a in self.algorithms)}")

    def _state_count(self, ad: ActivityDiagram) -> int:
        budget = ResourceBudget(self.settings.state_budget, resource="states", name=f"reach {ad.name}")
        return len(reachable_states(ad, budget=budget))

    def run_instance(self, name: str, ad1: ActivityDiagram, ad2: ActivityDiagram) -> BenchRow:
        """
        Measure one instance

        Args:
            name: Row label
            ad1: Original diagram
            ad2: Mutant

        Returns:
            BenchRow; witness statistics come from the last algorithm run
        """
        reports: Dict[Algorithm, DiffReport] = {
            algorithm: self.orchestrator.diff_report(ad1, ad2, algorithm) for algorithm in self.algorithms
        }
        last = reports[self.algorithms[-1]]
        lengths = _lengths(last)
        sequences = {tuple(witness.actions()) for witness in last.witnesses}
        agree = len({tuple(_lengths(report)) for report in reports.values()}) <= 1

        concrete = reports.get(Algorithm.CONCRETE)
        symbolic = reports.get(Algorithm.SYMBOLIC)
        return BenchRow(
            name=name,
            nodes=f"{len(ad1.nodes)}/{len(ad2.nodes)}",
            states=f"{self._state_count(ad1)}/{self._state_count(ad2)}",
            witnesses=last.witness_count,
            sequences=len(sequences),
            shortest=lengths[0] if lengths else 0,
            longest=lengths[-1] if lengths else 0,
            concrete_decide_ms=concrete.timings.decide_ms if concrete else None,
            concrete_all_ms=concrete.timings.total_ms if concrete else None,
            symbolic_decide_ms=symbolic.timings.decide_ms if symbolic else None,
            symbolic_all_ms=symbolic.timings.total_ms if symbolic else None,
            agree=agree,
        )

    def run(self, instances: Sequence[BenchInstance], progress: bool = True, parallel: bool = False) -> List[BenchRow]:
        """
        Measure every instance

        Args:
            instances: (name, original, mutant) triples
            progress: Show a progress bar
            parallel: Run instances on the configured worker threads; timings then overlap

        Returns:
            Rows in instance order
        """
        logger.info(f"Running {len(instances)} benchmark instances")
        rows: Dict[int, BenchRow] = {}
        with tqdm(total=len(instances), desc="bench", unit="row", disable=not progress) as bar:
            if parallel and self.settings.max_workers > 1:
                with ThreadPoolExecutor(max_workers=self.settings.max_workers) as executor:
                    future_to_index = {
                        executor.submit(self.run_instance, *instance): i for i, instance in enumerate(instances)
                    }
                    for future in as_completed(future_to_index):
                        rows[future_to_index[future]] = future.result()
                        bar.update(1)
            else:
                for i, instance in enumerate(instances):
                    rows[i] = self.run_instance(*instance)
                    bar.update(1)
        logger.info("Benchmark completed")
        return [rows[i] for i in range(len(instances))]


def render_table(rows: Sequence[BenchRow]) -> str:
    """Fixed-width text table with one line per row"""
    header = (
        "name", "nodes", "states", "wit", "seq", "short", "long", "conc decide/all (ms)", "symb decide/all (ms)",
    )

    def timing(decide: Optional[float], total: Optional[float]) -> str:
        if decide is None or total is None:
            return "-"
        return f"{decide:.0f}/{total:.0f}"

    lines = [header]
    for row in rows:
        lines.append(
            (
                row.name + ("" if row.agree else " !"),
                row.nodes,
                row.states,
                str(row.witnesses),
                str(row.sequences),
                str(row.shortest),
                str(row.longest),
                timing(row.concrete_decide_ms, row.concrete_all_ms),
                timing(row.symbolic_decide_ms, row.symbolic_all_ms),
            )
        )
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    return "\n".join("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip() for line in lines)
