# -*- coding: utf-8 -*-
import math
import unittest

import numpy as np

from otrisym import datasets
from otrisym.dcbm import BlockStats, block_stats, log_likelihood, move_delta, kn_infer, klem_infer
from otrisym.errors import DimensionError
from otrisym.model import Partition, random_partition
from otrisym.graph import Graph
from .fixtures import (blocks, clique, random_graph, triangle, two_triangles, dense_log_likelihood,
                       exhaustive_log_likelihood)


class TestBlockStats(unittest.TestCase):

    def test_triangle(self):
        g = triangle()
        stats = block_stats(g, Partition([0, 0, 1]))
        self.assertEqual(stats.m.tolist(), [[2, 2], [2, 0]])
        self.assertEqual(stats.kappa.tolist(), [4, 2])
        expected = 2 * math.log(2) + 2 * 2 * math.log(2) - 2 * (4 * math.log(4) + 2 * math.log(2))
        self.assertAlmostEqual(log_likelihood(stats), expected, places=12)

    def test_self_loops_count_on_the_diagonal(self):
        example = datasets.example1_graph()
        stats = block_stats(example, Partition([0, 0, 1, 1, 1]))
        self.assertEqual(stats.m.tolist(), [[4, 0], [0, 5]])
        self.assertEqual(stats.kappa.tolist(), [4, 5])

    def test_matches_dense(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            g = random_graph(9, rng)
            partition = random_partition(9, 3, seed=int(rng.integers(1000)))
            self.assertAlmostEqual(log_likelihood(block_stats(g, partition)),
                                   dense_log_likelihood(g.to_dense(), partition.assignment, 3), places=9)

    def test_empty_communities(self):
        g = triangle()
        stats = block_stats(g, Partition([0, 0, 0], r=3))
        self.assertEqual(stats.kappa.tolist(), [6, 0, 0])
        self.assertAlmostEqual(log_likelihood(stats), 6 * math.log(6) - 2 * 6 * math.log(6))

    def test_size_mismatch(self):
        self.assertRaises(DimensionError, block_stats, triangle(), Partition([0, 1]))

    def test_equality(self):
        stats = BlockStats([[2, 0], [0, 2]], [2, 2])
        self.assertEqual(stats, stats.copy())
        self.assertEqual(stats.r, 2)


class TestMoveDelta(unittest.TestCase):

    def test_matches_recomputation(self):
        rng = np.random.default_rng(13)
        for _ in range(10000):
            n = int(rng.integers(2, 10))
            r = int(rng.integers(2, 5))
            g = random_graph(n, rng, density=float(rng.uniform(0.2, 0.9)), max_multiplicity=3)
            partition = Partition(rng.integers(0, r, n), r)
            stats = block_stats(g, partition)
            i = int(rng.integers(n))
            targets = [k for k in range(r) if k != partition.assignment[i]]
            to = targets[int(rng.integers(len(targets)))]
            moved = partition.assignment.copy()
            moved[i] = to
            before = log_likelihood(stats)
            after = log_likelihood(block_stats(g, Partition(moved, r)))
            delta = move_delta(g, partition, stats, i, to)
            self.assertEqual((delta.node, delta.source, delta.target), (i, partition.assignment[i], to))
            self.assertLessEqual(abs(delta.delta_ll - (after - before)), 1e-9 * max(1.0, abs(before)))

    def test_same_community(self):
        g = triangle()
        partition = Partition([0, 0, 1])
        self.assertRaises(ValueError, move_delta, g, partition, block_stats(g, partition), 0, 0)

    def test_does_not_mutate_stats(self):
        g = two_triangles()
        partition = Partition([0, 0, 0, 1, 1, 1])
        stats = block_stats(g, partition)
        before = stats.copy()
        move_delta(g, partition, stats, 2, 1)
        self.assertEqual(stats, before)


class TestSplitBeatsMerge(unittest.TestCase):

    def test_disconnected_cliques(self):
        g = two_triangles()
        split = log_likelihood(block_stats(g, Partition([0, 0, 0, 1, 1, 1])))
        merged = log_likelihood(block_stats(g, Partition([0, 0, 0, 0, 0, 0], r=2)))
        self.assertGreater(split, merged)

    def test_example1_isolated_node_joins_a_community(self):
        example = datasets.example1_graph()
        a = example.to_dense()
        best = exhaustive_log_likelihood(a, 2)
        self.assertAlmostEqual(best, dense_log_likelihood(a, [0, 0, 1, 1, 1], 2), places=12)
        self.assertAlmostEqual(best, -(4 * math.log(4) + 5 * math.log(5)), places=12)
        self.assertGreater(best, dense_log_likelihood(a, [0, 0, 0, 0, 1], 2))


class TestInference(unittest.TestCase):

    def check_result(self, g, result, r):
        self.assertEqual(result.partition.r, r)
        self.assertAlmostEqual(result.log_likelihood, log_likelihood(block_stats(g, result.partition)),
                               places=9)

    def test_two_triangles(self):
        g = two_triangles()
        for infer in kn_infer, klem_infer:
            best = max((infer(g, 2, seed=seed) for seed in range(10)), key=lambda result: result.log_likelihood)
            self.check_result(g, best, 2)
            self.assertAlmostEqual(best.log_likelihood,
                                   log_likelihood(block_stats(g, Partition([0, 0, 0, 1, 1, 1]))), places=9)

    def test_never_worse_than_start(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            g = random_graph(12, rng, density=0.4)
            init = random_partition(12, 3, seed=int(rng.integers(1000)))
            start = log_likelihood(block_stats(g, init))
            for infer in kn_infer, klem_infer:
                result = infer(g, 3, init=init, seed=1)
                self.check_result(g, result, 3)
                self.assertGreaterEqual(result.log_likelihood, start - 1e-9)

    def best_single_delta(self, g, partition):
        stats = block_stats(g, partition)
        return max(move_delta(g, partition, stats, i, to).delta_ll
                   for i in range(g.n) for to in range(partition.r) if to != partition.assignment[i])

    def test_klem_stops_at_a_local_optimum(self):
        rng = np.random.default_rng(23)
        for _ in range(400):
            n = int(rng.integers(3, 9))
            r = int(rng.integers(2, 4))
            g = random_graph(n, rng, density=float(rng.uniform(0.3, 0.9)))
            result = klem_infer(g, r, seed=int(rng.integers(1000)), max_sweeps=200)
            self.assertLess(result.sweeps, 200)
            self.assertLessEqual(self.best_single_delta(g, result.partition), 1e-9)

    def test_kn_improves_any_start_with_an_improving_move(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            n = int(rng.integers(3, 10))
            r = int(rng.integers(2, 4))
            g = random_graph(n, rng, density=float(rng.uniform(0.3, 0.9)))
            init = random_partition(n, r, seed=int(rng.integers(1000)))
            start = log_likelihood(block_stats(g, init))
            result = kn_infer(g, r, init=init, seed=1)
            if self.best_single_delta(g, init) > 1e-9:
                self.assertGreater(result.log_likelihood, start + 1e-10)
            self.assertLessEqual(self.best_single_delta(g, result.partition), 1e-9)

    def test_kn_moves_off_a_perturbed_planted_start(self):
        a = blocks(clique(6), clique(6), clique(6))
        a[0, 6] = a[6, 0] = a[7, 12] = a[12, 7] = 1
        g = Graph.from_dense(a)
        truth = np.repeat(np.arange(3), 6)
        perturbed = truth.copy()
        perturbed[[1, 8, 14]] = [2, 0, 1]
        result = kn_infer(g, 3, init=Partition(perturbed), seed=0)
        self.assertEqual(result.partition, Partition(truth))
        self.assertGreater(result.log_likelihood, log_likelihood(block_stats(g, Partition(perturbed))))

    def test_small_instances_reach_exhaustive_optimum(self):
        rng = np.random.default_rng(29)
        hits = {kn_infer: 0, klem_infer: 0}
        for _ in range(10):
            g = random_graph(6, rng, density=0.6, loops=False)
            optimum = exhaustive_log_likelihood(g.to_dense(), 2)
            for infer in hits:
                best = max(infer(g, 2, seed=seed).log_likelihood for seed in range(30))
                self.assertLessEqual(best, optimum + 1e-9)
                hits[infer] += best >= optimum - 1e-9
        for infer, count in hits.items():
            self.assertGreaterEqual(count, 9, infer.__name__)

    def test_reproducible(self):
        g = datasets.load("karate").graph
        for infer in kn_infer, klem_infer:
            self.assertEqual(infer(g, 2, seed=3).partition, infer(g, 2, seed=3).partition)

    def test_single_community(self):
        g = two_triangles()
        for infer in kn_infer, klem_infer:
            result = infer(g, 1, seed=0)
            self.assertEqual(result.partition.assignment.tolist(), [0] * 6)

    def test_init_with_too_many_communities(self):
        g = two_triangles()
        self.assertRaises(DimensionError, kn_infer, g, 2, Partition([0, 1, 2, 0, 1, 2]))


if __name__ == '__main__':
    unittest.main()
