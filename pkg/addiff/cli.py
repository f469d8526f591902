"""
Command-line interface.

    addiff validate FILE...
    addiff diff A B [--algo concrete|symbolic] [--decide-only] [--switch-direction] [--report-dir DIR]
    addiff compare A B
    addiff evolve V1 V2 [V3...] [--report-dir DIR]
    addiff gen forking|linear|random ...
    addiff bench [--family forking|linear|all]
    addiff export FILE --format dot|smv [--against OTHER]

Exit codes: 0 no difference or success, 1 differences found, 2 usage or
parse error, 3 validation error, 4 resource budget exceeded.
"""

import argparse
import json
import logging
import random
import sys
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel

from .analyzers.benchmark import BenchInstance, BenchmarkRunner, forking_instances, linear_instances, render_table
from .analyzers.orchestrator import DiffOrchestrator
from .analyzers.wellformed import check_guard_exclusivity, validate
from .core.config import Settings
from .core.models.base import (
    AdParseError,
    BudgetExceededError,
    DiagramValidationError,
    IncomparableInputsError,
    InvalidMutationError,
    StateConstructionError,
    TraceMismatchError,
)
from .core.models.diagram import ActivityDiagram
from .core.models.enums import Algorithm, CompareResult, LinearVariant, OutputFormat
from .core.storage.file_storage import ReportStorage, load_diagram, load_diagrams, save_diagram
from .core.text.dot import export_dot
from .core.text.serializer import serialize
from .generators.families import gen_forking, gen_linear
from .generators.mutations import forking_mutant, linear_mutant
from .generators.random_ads import random_pair
from .semantics.smv import emit_smv

logger = logging.getLogger(__name__)

EXIT_SAME = 0
EXIT_DIFFERENT = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _settings(args: argparse.Namespace) -> Settings:
    settings = Settings.from_env()
    updates = {}
    if getattr(args, "state_budget", None) is not None:
        updates["state_budget"] = args.state_budget
    if getattr(args, "node_budget", None) is not None:
        updates["node_budget"] = args.node_budget
    if getattr(args, "algo", None):
        updates["algorithm"] = Algorithm.normalize(args.algo)
    return settings.model_copy(update=updates)


def _print(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _store(args: argparse.Namespace, report: BaseModel, report_type: str, identifier: str, entry: dict) -> None:
    """Save a report and a one-entry index when --report-dir is given"""
    if not getattr(args, "report_dir", None):
        return
    storage = ReportStorage(args.report_dir)
    path = storage.save_report(report, report_type, identifier)
    storage.save_index([{**entry, "file_path": path}], report_type)
    logger.info(f"Saved {report_type} report to {path}")


# commands


def cmd_validate(args: argparse.Namespace) -> int:
    settings = _settings(args)
    results: Dict[str, List[str]] = {}
    for ad in load_diagrams(args.files):
        diagnostics = validate(ad, settings.domain_limit)
        if not diagnostics:
            diagnostics = check_guard_exclusivity(ad, settings.enumeration_limit)
        results[ad.name] = [str(diagnostic) for diagnostic in diagnostics]

    if args.format == OutputFormat.JSON.value:
        _print(json.dumps(results, indent=2, ensure_ascii=False))
    else:
        for name, problems in results.items():
            _print(f"{name}: {'ok' if not problems else f'{len(problems)} problem(s)'}")
            for problem in problems:
                _print(f"  {problem}")
    return EXIT_INVALID if any(results.values()) else EXIT_SAME


def cmd_diff(args: argparse.Namespace) -> int:
    settings = _settings(args)
    ad1, ad2 = load_diagram(args.first), load_diagram(args.second)
    if args.switch_direction:
        ad1, ad2 = ad2, ad1
    orchestrator = DiffOrchestrator(settings)

    if args.format == OutputFormat.DOT.value:
        traces = orchestrator.addiff(ad1, ad2, settings.algorithm, max_traces=1, decide_only=args.decide_only)
        _print(export_dot(ad1, traces[0] if traces else None))
        return EXIT_DIFFERENT if traces else EXIT_SAME

    report = orchestrator.diff_report(
        ad1, ad2, settings.algorithm, decide_only=args.decide_only, max_traces=args.max_traces
    )
    if args.format == OutputFormat.JSON.value:
        _print(report.model_dump_json(indent=2))
    else:
        _print(report.render_text())
    _store(
        args,
        report,
        "diff",
        f"{ad1.name}__{ad2.name}__{report.algorithm.value}",
        {"direction": report.direction, "has_difference": report.has_difference, "witnesses": report.witness_count},
    )
    return EXIT_DIFFERENT if report.has_difference else EXIT_SAME


def cmd_compare(args: argparse.Namespace) -> int:
    settings = _settings(args)
    ad1, ad2 = load_diagram(args.first), load_diagram(args.second)
    result = DiffOrchestrator(settings).compare(ad1, ad2, settings.algorithm)
    if args.format == OutputFormat.JSON.value:
        _print(json.dumps({"first": ad1.name, "second": ad2.name, "result": result.value}, ensure_ascii=False))
    else:
        _print(f"{ad1.name} {result.value} {ad2.name}")
    return EXIT_SAME if result is CompareResult.EQUIVALENT else EXIT_DIFFERENT


def cmd_evolve(args: argparse.Namespace) -> int:
    settings = _settings(args)
    report = DiffOrchestrator(settings).analyze_history(load_diagrams(args.files), settings.algorithm)
    if args.format == OutputFormat.JSON.value:
        _print(report.model_dump_json(indent=2))
    else:
        _print(report.render_text())
    _store(args, report, "evolution", "__".join(report.versions), {"steps": [step.label for step in report.steps]})
    return EXIT_SAME


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "forking":
        ad = gen_forking(args.width, args.length)
        mutant = forking_mutant(ad) if args.mutant else None
    elif args.family == "linear":
        ad = gen_linear(args.length, args.domain, LinearVariant(args.variant))
        mutant = linear_mutant(ad) if args.mutant else None
    else:
        ad, mutant = random_pair(random.Random(args.seed))
        if not args.mutant:
            mutant = None

    diagrams = [ad] + ([mutant] if mutant is not None else [])
    if args.output:
        for diagram in diagrams:
            logger.info(f"Wrote {save_diagram(diagram, args.output)}")
    else:
        _print("\n".join(serialize(diagram) for diagram in diagrams))
    return EXIT_SAME


def cmd_bench(args: argparse.Namespace) -> int:
    settings = _settings(args)
    instances: List[BenchInstance] = []
    if args.family in ("forking", "all"):
        instances.extend(forking_instances(args.widths, args.length))
    if args.family in ("linear", "all"):
        instances.extend(linear_instances(args.length, args.domains, LinearVariant(args.variant)))

    algorithms = [Algorithm.CONCRETE, Algorithm.SYMBOLIC] if args.algo is None else [Algorithm.normalize(args.algo)]
    runner = BenchmarkRunner(settings, algorithms)
    json_output = args.format == OutputFormat.JSON.value
    rows = runner.run(instances, progress=not json_output, parallel=args.parallel)
    if json_output:
        _print(json.dumps([row.model_dump(mode="json") for row in rows], indent=2))
    else:
        _print(render_table(rows))
    return EXIT_SAME


def cmd_export(args: argparse.Namespace) -> int:
    ad = load_diagram(args.file)
    if args.format == OutputFormat.SMV.value:
        _print(emit_smv(ad))
        return EXIT_SAME
    trace = None
    if args.against:
        settings = _settings(args)
        traces = DiffOrchestrator(settings).addiff(ad, load_diagram(args.against), settings.algorithm, max_traces=1)
        trace = traces[0] if traces else None
    _print(export_dot(ad, trace))
    return EXIT_SAME


# argument parsing


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="Verbose logging")
    common.add_argument("--state-budget", type=int, help="Maximum explored states or state pairs")
    common.add_argument("--node-budget", type=int, help="Maximum live decision-diagram nodes")

    algo = argparse.ArgumentParser(add_help=False)
    algo.add_argument("--algo", choices=[a.value for a in Algorithm], help="Differencing algorithm")

    parser = argparse.ArgumentParser(prog="addiff", description="Semantic differencing of activity diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="Check diagrams for well-formedness")
    p.add_argument("files", nargs="+", help=".ad files")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("diff", parents=[common, algo], help="Witnesses of traces of A missing from B")
    p.add_argument("first", help="Diagram A")
    p.add_argument("second", help="Diagram B")
    p.add_argument("--decide-only", action="store_true", help="Only decide whether a difference exists")
    p.add_argument("--switch-direction", action="store_true", help="Diff B against A instead")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("--max-traces", type=int, help="Stop after this many witnesses")
    p.add_argument("--report-dir", help="Also save the JSON report below this directory")
    p.set_defaults(handler=cmd_diff)

    p = sub.add_parser("compare", parents=[common, algo], help="Compare two diagrams in both directions")
    p.add_argument("first", help="Diagram A")
    p.add_argument("second", help="Diagram B")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("evolve", parents=[common, algo], help="Compare consecutive versions")
    p.add_argument("files", nargs="+", help=".ad files in history order")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--report-dir", help="Also save the JSON report below this directory")
    p.set_defaults(handler=cmd_evolve)

    p = sub.add_parser("gen", parents=[common], help="Generate benchmark or random diagrams")
    p.add_argument("family", choices=["forking", "linear", "random"])
    p.add_argument("--width", type=int, default=1, help="Fork branches (forking)")
    p.add_argument("--length", type=int, default=6, help="Branch or fragment length")
    p.add_argument("--domain", type=int, default=16, help="Decision domain size (linear)")
    p.add_argument("--variant", choices=[v.value for v in LinearVariant], default=LinearVariant.LOCAL.value)
    p.add_argument("--seed", type=int, default=0, help="Seed (random)")
    p.add_argument("--mutant", action="store_true", help="Also emit the benchmark mutant or random partner")
    p.add_argument("--output", help="Target directory (default: stdout)")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("bench", parents=[common, algo], help="Run the scalability benchmark")
    p.add_argument("--family", choices=["forking", "linear", "all"], default="all")
    p.add_argument("--widths", type=_int_list, default=[1, 2, 3], help="Fork widths, e.g. 1,2,3")
    p.add_argument("--length", type=int, default=6, help="Branch or fragment length")
    p.add_argument("--domains", type=_int_list, default=[16, 32], help="Decision domain sizes")
    p.add_argument("--variant", choices=[v.value for v in LinearVariant], default=LinearVariant.LOCAL.value)
    p.add_argument("--parallel", action="store_true", help="Run rows on worker threads")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("export", parents=[common, algo], help="Export a diagram as DOT or SMV")
    p.add_argument("file", help=".ad file")
    p.add_argument("--format", choices=["dot", "smv"], default="dot")
    p.add_argument("--against", help="Highlight the first witness against this diagram (DOT)")
    p.set_defaults(handler=cmd_export)

    return parser


EXIT_CODES: Sequence = (
    (AdParseError, EXIT_USAGE),
    (OSError, EXIT_USAGE),
    (ValueError, EXIT_USAGE),
    (BudgetExceededError, EXIT_BUDGET),
    (DiagramValidationError, EXIT_INVALID),
    (IncomparableInputsError, EXIT_INVALID),
    (InvalidMutationError, EXIT_INVALID),
    (StateConstructionError, EXIT_INVALID),
    (TraceMismatchError, EXIT_INVALID),
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Command-line entry point; returns the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else getattr(logging, Settings.from_env().log_level)
    logging.basicConfig(level=level, format=LOG_FORMAT)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except Exception as e:
        for error_class, code in EXIT_CODES:
            if isinstance(e, error_class):
                logger.debug("command failed", exc_info=True)
                sys.stderr.write(f"{e}\n")
                return code
        raise


if __name__ == "__main__":
    sys.exit(main())
