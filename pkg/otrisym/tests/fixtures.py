# -*- coding: utf-8 -*-
"""Small graphs and brute-force oracles shared by the tests."""
import itertools
import math
import os
import shutil
import tempfile
import unittest

import numpy as np

from otrisym.graph import Graph


def blocks(*matrices):
    """Block-diagonal dense matrix."""
    n = sum(len(m) for m in matrices)
    out = np.zeros((n, n), dtype=np.int64)
    start = 0
    for m in matrices:
        m = np.asarray(m)
        out[start:start + len(m), start:start + len(m)] = m
        start += len(m)
    return out


def clique(size, loops=False):
    m = np.ones((size, size), dtype=np.int64)
    if not loops:
        np.fill_diagonal(m, 0)
    return m


def two_triangles():
    return Graph.from_dense(blocks(clique(3), clique(3)))


def triangle():
    return Graph.from_dense(clique(3))


def random_graph(n, rng, density=0.5, max_multiplicity=2, loops=True):
    """Random undirected multigraph with an even diagonal."""
    upper = np.triu(rng.integers(1, max_multiplicity + 1, size=(n, n)) * (rng.random((n, n)) < density), 1)
    a = upper + upper.T
    if loops:
        a[np.diag_indices(n)] = 2 * (rng.random(n) < density / 2)
    return Graph.from_dense(a)


def dense_log_likelihood(a, assignment, r):
    """Unnormalized DCBM log-likelihood from the dense matrix."""
    a = np.asarray(a, dtype=float)
    indicator = np.zeros((len(assignment), r))
    indicator[np.arange(len(assignment)), assignment] = 1
    m = indicator.T.dot(a).dot(indicator)
    kappa = m.sum(axis=1)
    total = sum(x * math.log(x) for x in m.ravel() if x > 0)
    return total - 2 * sum(x * math.log(x) for x in kappa if x > 0)


def all_assignments(n, r):
    for labels in itertools.product(range(r), repeat=n):
        yield np.array(labels, dtype=np.int64)


def exhaustive_log_likelihood(a, r):
    """Largest log-likelihood over every assignment of the nodes to ``r`` communities."""
    return max(dense_log_likelihood(a, labels, r) for labels in all_assignments(len(a), r))


def dense_frobenius_error(a, z, theta):
    return float(((np.asarray(a, dtype=float) - z.to_dense().dot(theta).dot(z.to_dense().T)) ** 2).sum())


class TempDirTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp(prefix="otrisym-")

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def path(self, *parts):
        return os.path.join(self.tmp, *parts)

    def write(self, name, text):
        path = self.path(name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path
