"""
Tests for the command-line interface.
"""

import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from addiff.cli import EXIT_BUDGET, EXIT_DIFFERENT, EXIT_INVALID, EXIT_SAME, EXIT_USAGE, main

from .helpers import CHAIN_AB, HIRE_VERSIONS, PROJ_VERSIONS, fixture_path


def run(*argv):
    """Run the command line and return (exit code, stdout, stderr)"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main([str(arg) for arg in argv])
    return code, out.getvalue(), err.getvalue()


@pytest.mark.integration
class TestCli(unittest.TestCase):
    """Test cases for the addiff command"""

    def setUp(self):
        """Set up a scratch directory"""
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        """Clean up the scratch directory"""
        self.tmp.cleanup()

    def write(self, name, text):
        path = self.dir / name
        path.write_text(text, encoding="utf-8")
        return path

    def test_validate_fixtures(self):
        """Test that every fixture validates"""
        code, out, _ = run("validate", *[fixture_path(name) for name in HIRE_VERSIONS + PROJ_VERSIONS])
        self.assertEqual(code, EXIT_SAME)
        self.assertIn("hire_v1: ok", out)
        self.assertEqual(out.count(": ok"), 7)

    def test_validate_ill_formed(self):
        """Test the exit code and listing of an ill-formed diagram"""
        path = self.write("broken.ad", CHAIN_AB.replace("  b -> stop;\n", ""))
        code, out, _ = run("validate", path, "--format", "json")
        self.assertEqual(code, EXIT_INVALID)
        self.assertTrue(json.loads(out)["chain"])

    def test_diff_text(self):
        """Test a difference in text form"""
        code, out, _ = run("diff", fixture_path("hire_v2"), fixture_path("hire_v3"))
        self.assertEqual(code, EXIT_DIFFERENT)
        self.assertIn("direction: hire_v2 -> hire_v3", out)
        self.assertIn("witnesses: 1", out)
        self.assertIn("(no corresponding state)", out)

    def test_diff_equivalent(self):
        """Test that equivalent diagrams exit with 0"""
        for algo in ("concrete", "symbolic"):
            code, _, _ = run("diff", fixture_path("proj_v1"), fixture_path("proj_v2"), "--algo", algo)
            self.assertEqual(code, EXIT_SAME)

    def test_diff_switch_direction(self):
        """Test that the reverse direction has no witness"""
        code, _, _ = run("diff", fixture_path("hire_v2"), fixture_path("hire_v3"), "--switch-direction")
        self.assertEqual(code, EXIT_SAME)

    def test_diff_json_and_report_dir(self):
        """Test JSON output and the saved report"""
        code, out, _ = run(
            "diff", fixture_path("hire_v2"), fixture_path("hire_v4"), "--format", "json", "--report-dir", self.dir
        )
        self.assertEqual(code, EXIT_DIFFERENT)
        payload = json.loads(out)
        self.assertEqual(payload["witness_count"], 2)
        self.assertEqual([w["length"] for w in payload["witnesses"]], [4, 4])

        saved = json.loads((self.dir / "diff" / "hire_v2__hire_v4__symbolic.json").read_text(encoding="utf-8"))
        self.assertEqual(saved["_metadata"]["report_type"], "diff")
        index = json.loads((self.dir / "diff" / "index.json").read_text(encoding="utf-8"))
        self.assertEqual(index["total_records"], 1)

    def test_diff_decide_only(self):
        """Test that decide-only output has no witnesses"""
        code, out, _ = run("diff", fixture_path("hire_v1"), fixture_path("hire_v2"), "--decide-only")
        self.assertEqual(code, EXIT_DIFFERENT)
        self.assertIn("difference: yes", out)

    def test_diff_dot(self):
        """Test the highlighted DOT output of a witness"""
        code, out, _ = run("diff", fixture_path("hire_v2"), fixture_path("hire_v3"), "--format", "dot")
        self.assertEqual(code, EXIT_DIFFERENT)
        self.assertTrue(out.startswith("digraph"))
        self.assertIn("gold", out)

    def test_compare(self):
        """Test the comparison line and its exit codes"""
        code, out, _ = run("compare", fixture_path("hire_v2"), fixture_path("hire_v3"))
        self.assertEqual((code, out), (EXIT_DIFFERENT, "hire_v2 > hire_v3\n"))
        code, out, _ = run("compare", fixture_path("proj_v1"), fixture_path("proj_v2"), "--format", "json")
        self.assertEqual(code, EXIT_SAME)
        self.assertEqual(json.loads(out), {"first": "proj_v1", "second": "proj_v2", "result": "≡"})

    def test_evolve(self):
        """Test the evolution listing and its saved report"""
        files = [fixture_path(name) for name in PROJ_VERSIONS]
        code, out, _ = run("evolve", *files, "--report-dir", self.dir)
        self.assertEqual(code, EXIT_SAME)
        self.assertEqual(out.splitlines(), ["proj_v1 ≡ proj_v2", "proj_v2 < proj_v3"])
        self.assertTrue((self.dir / "evolution" / "proj_v1__proj_v2__proj_v3.json").exists())

    def test_gen_stdout(self):
        """Test generated diagrams on standard output"""
        code, out, _ = run("gen", "forking", "--width", 2, "--length", 1, "--mutant")
        self.assertEqual(code, EXIT_SAME)
        self.assertIn("activity forking_w2_l1 {", out)
        self.assertIn("activity forking_w2_l1_mut {", out)
        self.assertIn('"a_end_renamed"', out)

    def test_gen_output_and_diff(self):
        """Test that written diagrams can be diffed back"""
        code, _, _ = run("gen", "linear", "--length", 2, "--domain", 4, "--mutant", "--output", self.dir)
        self.assertEqual(code, EXIT_SAME)
        original = self.dir / "linear_l2_d4_local.ad"
        mutant = self.dir / "linear_l2_d4_local_mut.ad"
        self.assertTrue(original.exists() and mutant.exists())
        code, out, _ = run("diff", original, mutant, "--format", "json", "--algo", "concrete")
        self.assertEqual(code, EXIT_DIFFERENT)
        self.assertEqual(json.loads(out)["witness_count"], 2)

    def test_gen_random(self):
        """Test that random generation is reproducible"""
        first = run("gen", "random", "--seed", 3, "--mutant")[1]
        second = run("gen", "random", "--seed", 3, "--mutant")[1]
        self.assertEqual(first, second)
        self.assertEqual(first.count("activity "), 2)

    def test_bench_json(self):
        """Test one benchmark row in JSON form"""
        code, out, _ = run("bench", "--family", "forking", "--widths", "1", "--length", 1, "--format", "json")
        self.assertEqual(code, EXIT_SAME)
        (row,) = json.loads(out)
        self.assertEqual(row["name"], "forking(W1/L1)")
        self.assertEqual(row["shortest"], 4)

    def test_export(self):
        """Test the DOT and SMV exports"""
        code, out, _ = run("export", fixture_path("proj_v2"), "--format", "smv")
        self.assertEqual(code, EXIT_SAME)
        self.assertTrue(out.startswith("MODULE main"))
        code, out, _ = run("export", fixture_path("hire_v3"), "--against", fixture_path("hire_v4"))
        self.assertEqual(code, EXIT_SAME)
        self.assertIn("gold", out)

    def test_parse_error(self):
        """Test that a syntax error exits with 2 and names the file"""
        path = self.write("bad.ad", "activity bad {\n  action a \"a\"\n}\n")
        code, _, err = run("validate", path)
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("bad.ad", err)

    def test_missing_file(self):
        """Test that an unreadable file exits with 2"""
        code, _, _ = run("diff", self.dir / "missing.ad", fixture_path("hire_v1"))
        self.assertEqual(code, EXIT_USAGE)

    def test_invalid_generator_parameters(self):
        """Test that an odd domain size exits with 2"""
        code, _, _ = run("gen", "linear", "--domain", 5)
        self.assertEqual(code, EXIT_USAGE)

    def test_budget_exceeded(self):
        """Test that a tiny state budget exits with 4"""
        code, _, err = run(
            "diff", fixture_path("hire_v1"), fixture_path("hire_v2"), "--algo", "concrete", "--state-budget", 2
        )
        self.assertEqual(code, EXIT_BUDGET)
        self.assertIn("budget", err)

    def test_ill_formed_diff(self):
        """Test that differencing an ill-formed diagram exits with 3"""
        path = self.write("broken.ad", CHAIN_AB.replace("  b -> stop;\n", ""))
        code, _, _ = run("diff", path, path)
        self.assertEqual(code, EXIT_INVALID)


if __name__ == "__main__":
    unittest.main()
