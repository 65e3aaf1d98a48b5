# -*- coding: utf-8 -*-
import itertools
import math
import unittest

import numpy as np

from otrisym.metrics import contingency, nmi, ami_max
from otrisym.model import Partition


def mutual_info(a, b):
    n = float(len(a))
    total = 0.0
    for u in set(a):
        for v in set(b):
            joint = sum(1 for x, y in zip(a, b) if x == u and y == v)
            if joint:
                total += joint / n * math.log(n * joint / (a.count(u) * float(b.count(v))))
    return total


def permutation_expected_mutual_info(a, b):
    values = [mutual_info(a, [b[i] for i in order]) for order in itertools.permutations(range(len(b)))]
    return sum(values) / len(values)


def entropy_of(a):
    n = float(len(a))
    return -sum(a.count(u) / n * math.log(a.count(u) / n) for u in set(a))


class TestChanceAdjustment(unittest.TestCase):

    def test_matches_permutation_average(self):
        cases = [
            ([0, 0, 1, 1, 2], [0, 1, 1, 0, 0]),
            ([0, 0, 0, 1, 1, 1], [0, 0, 1, 1, 2, 2]),
            ([0, 1, 0, 1, 0, 1, 2], [0, 0, 0, 0, 1, 1, 1]),
            ([0, 0, 0, 0, 1], [0, 0, 0, 0, 0]),
        ]
        for a, b in cases:
            expected = permutation_expected_mutual_info(a, b)
            normalizer = max(entropy_of(a), entropy_of(b))
            self.assertAlmostEqual(ami_max(a, b), (mutual_info(a, b) - expected) / (normalizer - expected),
                                   places=9)

    def test_nmi_uses_the_larger_entropy(self):
        a, b = [0, 0, 1, 1, 2, 2], [0, 0, 1, 2, 2, 2]
        self.assertAlmostEqual(nmi(a, b), mutual_info(a, b) / max(entropy_of(a), entropy_of(b)), places=12)

    def test_mutual_info(self):
        a, b = [0, 0, 1, 1, 2, 2], [0, 0, 1, 2, 2, 2]
        self.assertAlmostEqual(contingency(a, b).mutual_info(), mutual_info(a, b), places=12)


class TestScores(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(31)

    def test_identical_up_to_relabeling(self):
        a = [0, 0, 1, 1, 2, 2, 2]
        b = [2, 2, 0, 0, 1, 1, 1]
        self.assertAlmostEqual(nmi(a, b), 1.0, places=12)
        self.assertAlmostEqual(ami_max(a, b), 1.0, places=12)

    def test_symmetric(self):
        for _ in range(20):
            a = self.rng.integers(0, 3, 30)
            b = self.rng.integers(0, 4, 30)
            self.assertAlmostEqual(nmi(a, b), nmi(b, a), places=12)
            self.assertAlmostEqual(ami_max(a, b), ami_max(b, a), places=12)

    def test_permutation_invariant(self):
        a = self.rng.integers(0, 3, 40)
        b = self.rng.integers(0, 3, 40)
        relabel = np.array([2, 0, 1])
        self.assertAlmostEqual(ami_max(a, b), ami_max(relabel[a], b), places=12)
        self.assertAlmostEqual(nmi(a, b), nmi(a, relabel[b]), places=12)

    def test_bounds(self):
        for _ in range(20):
            a = self.rng.integers(0, 4, 25)
            b = self.rng.integers(0, 4, 25)
            score = nmi(a, b)
            self.assertGreaterEqual(score, 0.0)
            self.assertLessEqual(score, 1.0)
            self.assertLessEqual(ami_max(a, b), 1.0 + 1e-12)

    def test_single_communities(self):
        self.assertEqual(nmi([0, 0, 0], [1, 1, 1]), 1.0)
        self.assertEqual(ami_max([0, 0, 0], [1, 1, 1]), 1.0)

    def test_independent_is_below_chance(self):
        a, b = [0, 0, 1, 1], [0, 1, 0, 1]
        self.assertAlmostEqual(nmi(a, b), 0.0, places=12)
        self.assertLess(ami_max(a, b), 0.0)

    def test_unlabeled_nodes_are_excluded(self):
        a = [0, 0, 1, 1, -1, 0]
        b = [1, 1, 0, 0, 0, -1]
        self.assertAlmostEqual(nmi(a, b), 1.0, places=12)
        self.assertAlmostEqual(ami_max(a, b), 1.0, places=12)
        self.assertEqual(contingency(a, b).total, 4)

    def test_partitions(self):
        a = Partition([0, 0, 1, 1])
        self.assertAlmostEqual(nmi(a, Partition([1, 1, 0, 0])), 1.0, places=12)

    def test_errors(self):
        self.assertRaises(ValueError, nmi, [0, 1], [0, 1, 1])
        self.assertRaises(ValueError, ami_max, [0, -1], [-1, 0])


if __name__ == '__main__':
    unittest.main()
