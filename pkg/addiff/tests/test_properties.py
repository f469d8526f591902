"""
Randomized agreement and conformance checks of the two differencing algorithms.

Every generated pair is diffed by both algorithms; they must agree on which
input assignments have a witness and on the witness lengths, every witness
must conform to the definition, and the lengths must match the brute-force
oracle.
"""

import random
import unittest

import pytest

from addiff.analyzers.concrete import concrete_addiff
from addiff.analyzers.conformance import check_diff_trace, is_prefix_minimal, shortest_diff_lengths
from addiff.analyzers.orchestrator import DiffOrchestrator
from addiff.analyzers.symbolic import symbolic_addiff
from addiff.core.config import Settings
from addiff.core.models.enums import Algorithm
from addiff.generators.random_ads import random_diagram, random_pair
from addiff.semantics.stepper import StateSpace

QUICK_SEEDS = range(25)
FULL_SEEDS = range(500)
ORACLE_BOUND = 10_000


def lengths_by_input(traces):
    return {trace.inputs: len(trace) for trace in traces}


class AgreementMixin:
    """Checks shared by the quick and the full runs"""

    def check_pair(self, seed: int) -> None:
        ad1, ad2 = random_pair(random.Random(seed))
        concrete = concrete_addiff(ad1, ad2)
        symbolic = symbolic_addiff(ad1, ad2)
        label = f"seed {seed}"

        self.assertEqual(lengths_by_input(concrete), lengths_by_input(symbolic), label)
        self.assertEqual(len(concrete), len(symbolic), label)
        self.assertEqual(lengths_by_input(concrete), shortest_diff_lengths(ad1, ad2, ORACLE_BOUND), label)

        spaces = (StateSpace(ad1), StateSpace(ad2))
        for trace in concrete + symbolic:
            self.assertEqual(check_diff_trace(trace, ad1, ad2, spaces), [], label)
            self.assertTrue(is_prefix_minimal(trace, ad1, ad2), label)

        self.assertEqual(bool(concrete_addiff(ad1, ad2, decide_only=True)), bool(concrete), label)
        self.assertEqual(bool(symbolic_addiff(ad1, ad2, decide_only=True)), bool(symbolic), label)

    def check_reflexive(self, seed: int) -> None:
        ad = random_diagram(random.Random(seed))
        self.assertEqual(concrete_addiff(ad, ad), [], f"seed {seed}")
        self.assertEqual(symbolic_addiff(ad, ad), [], f"seed {seed}")

    def check_antisymmetric(self, seed: int, orchestrator: DiffOrchestrator) -> None:
        ad1, ad2 = random_pair(random.Random(seed))
        forward = orchestrator.compare(ad1, ad2)
        backward = orchestrator.compare(ad2, ad1)
        self.assertEqual(backward, forward.reversed(), f"seed {seed}")
        concrete = orchestrator.compare(ad1, ad2, Algorithm.CONCRETE)
        self.assertEqual(concrete, forward, f"seed {seed}")


@pytest.mark.unit
class TestQuickAgreement(AgreementMixin, unittest.TestCase):
    """Test cases for algorithm agreement on a few generated pairs"""

    def setUp(self):
        """Set up a single-threaded orchestrator"""
        self.orchestrator = DiffOrchestrator(Settings(max_workers=1))

    def test_agreement(self):
        """Test agreement, conformance and the oracle on a few seeds"""
        for seed in QUICK_SEEDS:
            self.check_pair(seed)

    def test_reflexive(self):
        """Test that no generated diagram differs from itself"""
        for seed in QUICK_SEEDS:
            self.check_reflexive(seed)

    def test_antisymmetric(self):
        """Test that swapping the operands reverses the comparison"""
        for seed in QUICK_SEEDS:
            self.check_antisymmetric(seed, self.orchestrator)


@pytest.mark.slow
class TestFullAgreement(AgreementMixin, unittest.TestCase):
    """Test cases for algorithm agreement on many generated pairs"""

    def setUp(self):
        """Set up an orchestrator with worker threads"""
        self.orchestrator = DiffOrchestrator(Settings(max_workers=2))

    def test_agreement(self):
        """Test agreement, conformance and the oracle on 500 seeds"""
        for seed in FULL_SEEDS:
            self.check_pair(seed)

    def test_reflexive(self):
        """Test reflexivity on 500 seeds"""
        for seed in FULL_SEEDS:
            self.check_reflexive(seed)

    def test_antisymmetric(self):
        """Test antisymmetry on 500 seeds"""
        for seed in FULL_SEEDS:
            self.check_antisymmetric(seed, self.orchestrator)


if __name__ == "__main__":
    unittest.main()
