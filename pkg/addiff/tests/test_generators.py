"""
Tests for the benchmark families, mutations, random diagrams and the benchmark runner.
"""

import random
import time
import unittest

import pytest
from pydantic import ValidationError

from addiff.analyzers.benchmark import BenchmarkRunner, forking_instances, linear_instances, render_table
from addiff.analyzers.concrete import concrete_addiff
from addiff.analyzers.symbolic import symbolic_addiff
from addiff.analyzers.wellformed import check_guard_exclusivity, validate
from addiff.core.config import Settings
from addiff.core.models.base import InvalidMutationError
from addiff.core.models.enums import Algorithm, LinearVariant, MutationKind
from addiff.core.text.parser import parse_or_raise
from addiff.core.text.serializer import serialize
from addiff.generators.families import gen_forking, gen_linear
from addiff.generators.mutations import MutationSpec, forking_mutant, linear_mutant, mutate
from addiff.generators.random_ads import random_diagram, random_pair
from addiff.semantics.traces import reachable_states


def well_formed(ad):
    return not validate(ad) and not check_guard_exclusivity(ad)


@pytest.mark.unit
class TestForkingFamily(unittest.TestCase):
    """Test cases for gen_forking"""

    def test_node_count(self):
        """Test that a forking diagram has W*L + 6 nodes"""
        for width, length in ((1, 1), (2, 3), (3, 6)):
            ad = gen_forking(width, length)
            self.assertEqual(len(ad.nodes), width * length + 6)
            self.assertEqual(ad.name, f"forking_w{width}_l{length}")
            self.assertTrue(well_formed(ad))

    def test_single_branch_states(self):
        """Test the reachable states of a single branch"""
        self.assertEqual(len(reachable_states(gen_forking(1, 6))), 10)

    def test_invalid_parameters(self):
        """Test that empty branches are rejected"""
        with self.assertRaises(ValueError):
            gen_forking(0, 6)
        with self.assertRaises(ValueError):
            gen_forking(2, 0)

    def test_mutant_witness(self):
        """Test that the renamed last action yields one witness of length W*L + 3"""
        for width, length in ((1, 6), (2, 2)):
            ad = gen_forking(width, length)
            mutant = forking_mutant(ad)
            for algorithm in (concrete_addiff, symbolic_addiff):
                traces = algorithm(ad, mutant)
                self.assertEqual([len(t) for t in traces], [width * length + 3])
                self.assertEqual(traces[0].actions()[-1], "a_end")


def best_time(algorithm, ad1, ad2, repeat=2):
    """Best wall time of repeat runs, with the traces of the last one"""
    best = None
    for _ in range(repeat):
        started = time.perf_counter()
        traces = algorithm(ad1, ad2)
        elapsed = time.perf_counter() - started
        best = elapsed if best is None else min(best, elapsed)
    return best, traces


@pytest.mark.slow
class TestForkingScaling(unittest.TestCase):
    """Test the symbolic algorithm keeps up with the explicit one on wide forks"""

    def run_both(self, width):
        ad = gen_forking(width, 6)
        mutant = forking_mutant(ad)
        concrete_time, concrete = best_time(concrete_addiff, ad, mutant)
        symbolic_time, symbolic = best_time(symbolic_addiff, ad, mutant)
        expected = [width * 6 + 3]
        self.assertEqual([len(t) for t in concrete], expected)
        self.assertEqual([len(t) for t in symbolic], expected)
        return concrete_time, symbolic_time

    def test_width_three(self):
        """Test forking(3,6): witness length 21, symbolic within twice the explicit time"""
        concrete_time, symbolic_time = self.run_both(3)
        self.assertLessEqual(symbolic_time, 2 * concrete_time)

    def test_width_four(self):
        """Test forking(4,6): witness length 27, symbolic faster than explicit"""
        concrete_time, symbolic_time = self.run_both(4)
        self.assertLess(symbolic_time, concrete_time)


@pytest.mark.unit
class TestLinearFamily(unittest.TestCase):
    """Test cases for gen_linear"""

    def test_node_count(self):
        """Test that a linear diagram has 2L + 10 nodes in both variants"""
        for variant in LinearVariant:
            ad = gen_linear(4, 8, variant)
            self.assertEqual(len(ad.nodes), 18)
            self.assertTrue(well_formed(ad))

    def test_variants(self):
        """Test where the decision variable lives"""
        ad = gen_linear(2, 4, LinearVariant.INPUT)
        self.assertEqual([v.name for v in ad.input_vars], ["d"])
        self.assertEqual(ad.local_vars, ())
        ad = gen_linear(2, 4, "local")
        self.assertEqual([v.name for v in ad.input_vars], ["sel"])
        self.assertEqual([v.name for v in ad.local_vars], ["d"])

    def test_odd_domain(self):
        """Test that the domain size must be even"""
        with self.assertRaises(ValueError):
            gen_linear(3, 5)

    def test_mutant_witnesses(self):
        """Test one witness per input value below D/2, each of length L + 3"""
        for variant in LinearVariant:
            ad = gen_linear(2, 4, variant)
            mutant = linear_mutant(ad)
            for algorithm in (concrete_addiff, symbolic_addiff):
                traces = algorithm(ad, mutant)
                self.assertEqual([len(t) for t in traces], [5, 5], f"{variant.value} {algorithm.__name__}")
                self.assertEqual([t.inputs[0][1] for t in traces], [0, 1])
            self.assertEqual(symbolic_addiff(mutant, ad)[0].actions()[-1], "t2_renamed")


@pytest.mark.unit
class TestMutations(unittest.TestCase):
    """Test cases for mutate and MutationSpec"""

    def setUp(self):
        """Set up a forking diagram with two branches of two actions"""
        self.ad = gen_forking(2, 2)

    def test_rename(self):
        """Test that a rename changes one action name"""
        mutant = mutate(self.ad, MutationSpec(kind="rename", target="b1_2", new_name="x"))
        self.assertEqual(mutant.name, "forking_w2_l2_mut")
        self.assertEqual(mutant.node_map()["b1_2"].action_name, "x")
        self.assertEqual(self.ad.node_map()["b1_2"].action_name, "b1_2")

    def test_delete(self):
        """Test that a deleted node is bypassed"""
        mutant = mutate(self.ad, MutationSpec(kind=MutationKind.DELETE, target="b1_1"))
        self.assertNotIn("b1_1", mutant.node_map())
        self.assertIn(("split", "b1_2"), [(t.src, t.trg) for t in mutant.transitions])
        self.assertEqual(len(mutant.nodes), len(self.ad.nodes) - 1)

    def test_delete_last_branch_action(self):
        """Test that emptying a fork branch is rejected"""
        ad = gen_forking(2, 1)
        with self.assertRaises(InvalidMutationError) as ctx:
            mutate(ad, MutationSpec(kind="delete", target="b1_1"))
        self.assertEqual(ctx.exception.target, "b1_1")

    def test_move(self):
        """Test that a moved node runs behind its anchor"""
        mutant = mutate(self.ad, MutationSpec(kind="move", target="b1_1", after="b1_2"))
        edges = {(t.src, t.trg) for t in mutant.transitions}
        self.assertTrue({("split", "b1_2"), ("b1_2", "b1_1"), ("b1_1", "sync")} <= edges)
        traces = concrete_addiff(self.ad, mutant)
        self.assertEqual(len(traces), 1)
        self.assertEqual(len(traces[0]), 3)

    def test_invalid_targets(self):
        """Test that only action nodes can be mutated"""
        with self.assertRaises(InvalidMutationError):
            mutate(self.ad, MutationSpec(kind="rename", target="split", new_name="x"))
        with self.assertRaises(InvalidMutationError):
            mutate(self.ad, MutationSpec(kind="move", target="b1_1", after="b1_1"))

    def test_spec_validation(self):
        """Test that a mutation needs its payload"""
        with self.assertRaises(ValidationError):
            MutationSpec(kind="rename", target="a0")
        with self.assertRaises(ValidationError):
            MutationSpec(kind="move", target="a0")
        with self.assertRaises(ValidationError):
            MutationSpec(kind="swap", target="a0")
        self.assertIs(MutationSpec(kind=" Delete ", target="a0").kind, MutationKind.DELETE)


@pytest.mark.unit
class TestRandomDiagrams(unittest.TestCase):
    """Test cases for the random generator"""

    def test_deterministic_per_seed(self):
        """Test that a seed fixes the generated pair"""
        first = random_pair(random.Random(11))
        second = random_pair(random.Random(11))
        self.assertEqual(serialize(first[0]), serialize(second[0]))
        self.assertEqual(serialize(first[1]), serialize(second[1]))

    def test_generated_diagrams_are_well_formed(self):
        """Test size bounds and well-formedness over a range of seeds"""
        for seed in range(30):
            ad1, ad2 = random_pair(random.Random(seed))
            for ad in (ad1, ad2):
                self.assertLessEqual(len(ad.nodes), 12, f"seed {seed}")
                self.assertLessEqual(len(ad.input_vars) + len(ad.local_vars), 2)
                self.assertTrue(well_formed(ad), f"seed {seed}: {ad.name}")
            self.assertEqual(ad1.input_vars, ad2.input_vars)

    def test_text_form_is_stable(self):
        """Test that printing a parsed generated diagram reproduces the text"""
        for seed in range(10):
            text = serialize(random_diagram(random.Random(seed)))
            self.assertEqual(serialize(parse_or_raise(text)), text)

    def test_minimum_size(self):
        """Test that at least initial, one action and final are needed"""
        with self.assertRaises(ValueError):
            random_diagram(random.Random(0), max_nodes=2)


@pytest.mark.integration
class TestBenchmarkRunner(unittest.TestCase):
    """Test cases for BenchmarkRunner"""

    def setUp(self):
        """Set up a runner with both algorithms"""
        self.runner = BenchmarkRunner(Settings(max_workers=2))

    def test_forking_rows(self):
        """Test the rows of two small forking instances"""
        rows = self.runner.run(forking_instances(widths=(1, 2), length=2), progress=False)
        self.assertEqual([row.name for row in rows], ["forking(W1/L2)", "forking(W2/L2)"])
        self.assertEqual(rows[0].nodes, "8/8")
        self.assertEqual((rows[0].witnesses, rows[0].shortest, rows[0].longest), (1, 5, 5))
        self.assertEqual(rows[1].shortest, 7)
        self.assertTrue(all(row.agree for row in rows))
        self.assertIsNotNone(rows[0].concrete_decide_ms)
        self.assertIsNotNone(rows[0].symbolic_all_ms)

    def test_linear_rows_in_parallel(self):
        """Test that parallel runs keep instance order"""
        rows = self.runner.run(linear_instances(length=2, domains=(4, 8)), progress=False, parallel=True)
        self.assertEqual([row.name for row in rows], ["lbl(L2/D4)", "lbl(L2/D8)"])
        self.assertEqual([row.witnesses for row in rows], [2, 4])
        self.assertEqual([row.sequences for row in rows], [1, 1])

    def test_single_algorithm(self):
        """Test that unmeasured algorithms leave their timings empty"""
        runner = BenchmarkRunner(Settings(), [Algorithm.SYMBOLIC])
        (row,) = runner.run(forking_instances(widths=(1,), length=1), progress=False)
        self.assertIsNone(row.concrete_decide_ms)
        self.assertIsNotNone(row.symbolic_decide_ms)

    def test_render_table(self):
        """Test the fixed-width table"""
        rows = self.runner.run(forking_instances(widths=(1,), length=1), progress=False)
        table = render_table(rows).splitlines()
        self.assertEqual(len(table), 2)
        self.assertTrue(table[0].startswith("name"))
        self.assertTrue(table[1].startswith("forking(W1/L1)"))


if __name__ == "__main__":
    unittest.main()
