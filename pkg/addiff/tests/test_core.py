"""
Unit tests for settings, budgets, report models and report storage.
"""

import json
import os
import tempfile
import unittest
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from addiff.core.budget import ResourceBudget
from addiff.core.config import DEFAULT_STATE_BUDGET, Settings
from addiff.core.models.base import BudgetExceededError, Diagnostic
from addiff.core.models.enums import Algorithm, CompareResult, NodeKind, Rule
from addiff.core.models.report import DiffReport, EvolutionReport, EvolutionStep, StateView, Witness, WitnessStep
from addiff.core.storage.file_storage import ReportStorage, load_diagram, safe_identifier, save_diagram

from .helpers import CHAIN_AB, diagram


@pytest.mark.unit
class TestSettings(unittest.TestCase):
    """Test cases for Settings"""

    def test_defaults(self):
        """Test the default limits"""
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings.from_env(dotenv=False)
        self.assertEqual(settings.state_budget, DEFAULT_STATE_BUDGET)
        self.assertIs(settings.algorithm, Algorithm.SYMBOLIC)
        self.assertEqual(settings.log_level, "INFO")

    def test_from_env(self):
        """Test reading limits and switches from the environment"""
        env = {
            "ADDIFF_STATE_BUDGET": "500",
            "ADDIFF_MAX_WORKERS": "4",
            "ADDIFF_ALGORITHM": "Explicit",
            "ADDIFF_LOG_LEVEL": "debug",
        }
        with patch.dict(os.environ, env, clear=True):
            settings = Settings.from_env(dotenv=False)
        self.assertEqual(settings.state_budget, 500)
        self.assertEqual(settings.max_workers, 4)
        self.assertIs(settings.algorithm, Algorithm.CONCRETE)
        self.assertEqual(settings.log_level, "DEBUG")

    def test_non_numeric_value_is_ignored(self):
        """Test that a malformed number falls back to the default with a warning"""
        with patch.dict(os.environ, {"ADDIFF_NODE_BUDGET": "lots"}, clear=True):
            with self.assertLogs("addiff.core.config", level="WARNING") as logs:
                settings = Settings.from_env(dotenv=False)
        self.assertEqual(settings.node_budget, Settings().node_budget)
        self.assertIn("ADDIFF_NODE_BUDGET", logs.output[0])

    def test_validation(self):
        """Test the field constraints"""
        with self.assertRaises(ValidationError):
            Settings(max_workers=0)
        with self.assertRaises(ValidationError):
            Settings(unknown=1)
        self.assertEqual(Settings(log_level="loud").log_level, "INFO")
        self.assertIs(Settings(algorithm=None).algorithm, Algorithm.SYMBOLIC)


@pytest.mark.unit
class TestResourceBudget(unittest.TestCase):
    """Test cases for ResourceBudget"""

    def test_consume_until_exceeded(self):
        """Test that the budget raises once the limit is passed"""
        budget = ResourceBudget(3, resource="states", name="test")
        budget.consume(3)
        with self.assertRaises(BudgetExceededError) as ctx:
            budget.consume()
        self.assertEqual((ctx.exception.resource, ctx.exception.limit), ("states", 3))
        self.assertIn("test", str(ctx.exception))

    def test_observe_tracks_peak(self):
        """Test that gauge readings update the peak without adding up"""
        budget = ResourceBudget(100, resource="nodes")
        budget.observe(40)
        budget.observe(10)
        stats = budget.get_stats()
        self.assertEqual((stats["used"], stats["peak"], stats["remaining"]), (0, 40, 100))

    def test_unlimited_and_reset(self):
        """Test the unlimited budget and the reset"""
        budget = ResourceBudget(None)
        budget.consume(10**6)
        self.assertIsNone(budget.get_stats()["remaining"])
        budget.reset()
        self.assertEqual((budget.used, budget.peak), (0, 0))

    def test_warning_near_limit(self):
        """Test the warning logged close to the limit"""
        budget = ResourceBudget(10, name="near")
        with self.assertLogs("addiff.core.budget", level="WARNING"):
            budget.consume(9)


@pytest.mark.unit
class TestReportModels(unittest.TestCase):
    """Test cases for the report models and the comparison enum"""

    def setUp(self):
        """Set up a two-step witness"""
        self.view = StateView(node="a", action="a", vars={"x": "true"})
        self.steps = [WitnessStep(index=0, ad1=self.view, ad2=self.view), WitnessStep(index=1, ad1=self.view)]

    def test_witness_shape(self):
        """Test the witness length and last-step checks"""
        witness = Witness(length=2, inputs={"x": "true"}, steps=self.steps)
        self.assertEqual(witness.actions(), ["a", "a"])
        with self.assertRaises(ValidationError):
            Witness(length=3, steps=self.steps)
        with self.assertRaises(ValidationError):
            Witness(length=1, steps=self.steps[:1])

    def test_diff_report_count(self):
        """Test that the witness count must match unless deciding only"""
        timings = {"decide_ms": 1.0, "total_ms": 2.0}
        with self.assertRaises(ValidationError):
            DiffReport(
                direction="a -> b", algorithm="symbolic", has_difference=True, witness_count=1, timings=timings
            )
        report = DiffReport(
            direction="a -> b",
            algorithm="concrete",
            decide_only=True,
            has_difference=True,
            witness_count=0,
            timings=timings,
        )
        self.assertIs(report.algorithm, Algorithm.CONCRETE)

    def test_evolution_report(self):
        """Test the step count check and the labels"""
        step = EvolutionStep(older="v1", newer="v2", result="<>")
        report = EvolutionReport(versions=["v1", "v2"], steps=[step])
        self.assertEqual(report.render_text(), "v1 <> v2")
        self.assertEqual(EvolutionReport.model_validate(json.loads(report.model_dump_json())), report)
        with self.assertRaises(ValidationError):
            EvolutionReport(versions=["v1", "v2", "v3"], steps=[step])

    def test_compare_result(self):
        """Test parsing, derivation and reversal of comparison outcomes"""
        self.assertIs(CompareResult.normalize("=="), CompareResult.EQUIVALENT)
        self.assertIs(CompareResult.normalize(" Incomparable "), CompareResult.INCOMPARABLE)
        self.assertIsNone(CompareResult.normalize("?"))
        self.assertIs(CompareResult.from_directions(True, False), CompareResult.GREATER)
        self.assertIs(CompareResult.from_directions(False, True), CompareResult.LESS)
        self.assertIs(CompareResult.from_directions(False, False), CompareResult.EQUIVALENT)
        self.assertIs(CompareResult.from_directions(True, True), CompareResult.INCOMPARABLE)
        self.assertIs(CompareResult.LESS.reversed(), CompareResult.GREATER)
        self.assertIs(CompareResult.INCOMPARABLE.reversed(), CompareResult.INCOMPARABLE)
        self.assertFalse(CompareResult.EQUIVALENT.is_different)

    def test_enums(self):
        """Test keyword normalization of the enums"""
        self.assertIs(NodeKind.normalize(" Fork "), NodeKind.FORK)
        self.assertIsNone(NodeKind.normalize("loop"))
        self.assertTrue(NodeKind.JOIN.is_routing)
        self.assertFalse(NodeKind.INITIAL.is_routing)
        self.assertIs(Algorithm.normalize("bfs"), Algorithm.CONCRETE)
        self.assertIs(Algorithm.normalize(""), Algorithm.SYMBOLIC)

    def test_diagnostic_text(self):
        """Test the printed form of a diagnostic with a witness"""
        diagnostic = Diagnostic(Rule.GUARD_OVERLAP, "d", "guards overlap", (("n", 1),))
        self.assertEqual(str(diagnostic), "[guard-overlap] d: guards overlap (witness: n=1)")
        self.assertEqual(diagnostic.to_dict()["witness"], {"n": "1"})


@pytest.mark.unit
class TestStorage(unittest.TestCase):
    """Test cases for diagram files and ReportStorage"""

    def setUp(self):
        """Set up a scratch directory"""
        self.tmp = tempfile.TemporaryDirectory()
        self.storage = ReportStorage(self.tmp.name)

    def tearDown(self):
        """Clean up the scratch directory"""
        self.tmp.cleanup()

    def test_safe_identifier(self):
        """Test that path separators are replaced"""
        self.assertEqual(safe_identifier("a/b c:d"), "a_b_c_d")

    def test_diagram_files(self):
        """Test that a saved diagram loads back equal"""
        ad = diagram(CHAIN_AB)
        path = save_diagram(ad, self.tmp.name)
        self.assertTrue(path.endswith("chain.ad"))
        self.assertEqual(load_diagram(path), ad)

    def test_report_round_trip(self):
        """Test saving and loading a report with metadata"""
        report = EvolutionReport(versions=["v1", "v2"], steps=[EvolutionStep(older="v1", newer="v2", result="≡")])
        path = self.storage.save_report(report, "evolution", "v1/v2")
        with open(path, encoding="utf-8") as f:
            record = json.load(f)
        self.assertEqual(record["_metadata"]["identifier"], "v1/v2")
        self.assertEqual(self.storage.load_report(EvolutionReport, "evolution", "v1/v2"), report)
        self.assertIsNone(self.storage.load_report(EvolutionReport, "evolution", "missing"))

    def test_index(self):
        """Test the index of one report type"""
        self.assertIsNone(self.storage.save_index([], "diff"))
        path = self.storage.save_index([{"direction": "a -> b"}, {"direction": "b -> a"}], "diff")
        with open(path, encoding="utf-8") as f:
            index = json.load(f)
        self.assertEqual(index["total_records"], 2)
        self.assertEqual(index["records"][1]["direction"], "b -> a")


if __name__ == "__main__":
    unittest.main()
