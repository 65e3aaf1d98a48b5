# -*- coding: utf-8 -*-
"""Compact factors ``(Z, theta)`` of an orthogonal symmetric trifactorization.

``Z`` has at most one nonzero per row, so it is stored as two vectors: the
community ``v[i]`` of node ``i`` and its weight ``w[i] = Z[i, v[i]]``.
"""
import json
import logging

import numpy as np

from .errors import DimensionError, ZeroRowError
from .validation.contexts import config_context
from .validation.extras import accepts

__all__ = ["ScaledAssignment", "MixingMatrix", "Partition", "normalize_columns",
           "reconstruct_entry", "reconstruct", "frobenius_error", "kl_divergence",
           "project_adjacency", "to_partition", "random_partition",
           "factors_from_partition", "dump_factors", "load_factors"]

log = logging.getLogger(__name__)

NORMALIZED_TOL = 1e-12


class ScaledAssignment(object):
    """The factor ``Z`` as ``(v, w, r)``.

    :param v: community index of every node, in ``0..r-1``
    :param w: nonnegative weight of every node; ``0`` marks a node that
        belongs to no community
    :param r: number of communities (an upper bound; some may be empty)
    """

    def __init__(self, v, w, r):
        v = np.array(v, dtype=np.int64).ravel()
        w = np.array(w, dtype=float).ravel()
        r = int(r)
        if v.shape != w.shape:
            raise DimensionError("v and w differ in length: {} != {}".format(v.size, w.size))
        if r < 1:
            raise DimensionError("r must be positive, got {}".format(r))
        if v.size and (v.min() < 0 or v.max() >= r):
            raise DimensionError("community indices must lie in 0..{}".format(r - 1))
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise DimensionError("weights must be finite and nonnegative")
        self.v = v
        self.w = w
        self.r = r

    @property
    def n(self):
        return self.v.size

    def copy(self):
        return ScaledAssignment(self.v.copy(), self.w.copy(), self.r)

    def column_sums(self):
        """``Z^T 1``, the weight mass of every community."""
        return np.bincount(self.v, weights=self.w, minlength=self.r)

    def column_norms_sq(self):
        """Diagonal of ``Z^T Z``."""
        return np.bincount(self.v, weights=self.w * self.w, minlength=self.r)

    def zero_rows(self):
        return np.flatnonzero(self.w == 0)

    def is_normalized(self, tol=NORMALIZED_TOL):
        norms = self.column_norms_sq()
        occupied = np.bincount(self.v[self.w > 0], minlength=self.r) > 0
        return bool(np.all(np.abs(norms[occupied] - 1.0) <= tol))

    def to_dense(self):
        z = np.zeros((self.n, self.r))
        z[np.arange(self.n), self.v] = self.w
        return z

    def __eq__(self, other):
        return (isinstance(other, ScaledAssignment) and self.r == other.r
                and np.array_equal(self.v, other.v) and np.array_equal(self.w, other.w))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "ScaledAssignment(n={}, r={})".format(self.n, self.r)


class MixingMatrix(object):
    """The symmetric nonnegative ``r x r`` matrix ``theta``."""

    def __init__(self, theta, tol=1e-9):
        theta = np.array(theta, dtype=float)
        if theta.ndim == 0:
            theta = theta.reshape(1, 1)
        if theta.ndim != 2 or theta.shape[0] != theta.shape[1]:
            raise DimensionError("theta must be square, got shape {}".format(theta.shape))
        scale = max(1.0, float(np.abs(theta).max())) if theta.size else 1.0
        if np.any(theta < -tol * scale):
            raise DimensionError("theta must be nonnegative")
        if not np.allclose(theta, theta.T, rtol=0, atol=tol * scale):
            raise DimensionError("theta must be symmetric")
        self.theta = np.maximum((theta + theta.T) / 2, 0.0)

    @property
    def r(self):
        return self.theta.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.theta if dtype is None else self.theta.astype(dtype)

    def __repr__(self):
        return "MixingMatrix({!r})".format(self.theta.tolist())


def _theta(theta):
    return np.asarray(theta.theta if isinstance(theta, MixingMatrix) else theta, dtype=float)


class Partition(object):
    """A hard assignment of nodes to communities ``0..r-1``."""

    allows_unlabeled = False

    def __init__(self, assignment, r=None):
        assignment = np.array(assignment, dtype=np.int64).ravel()
        labeled = assignment[assignment >= 0] if self.allows_unlabeled else assignment
        if not self.allows_unlabeled and assignment.size and assignment.min() < 0:
            raise DimensionError("community indices must be nonnegative")
        if r is None:
            r = int(labeled.max()) + 1 if labeled.size else 1
        r = int(r)
        if r < 1:
            raise DimensionError("r must be positive, got {}".format(r))
        if labeled.size and labeled.max() >= r:
            raise DimensionError("community index {} is not below r={}".format(labeled.max(), r))
        self.assignment = assignment
        self.r = r

    @property
    def n(self):
        return self.assignment.size

    def sizes(self):
        return np.bincount(self.assignment[self.assignment >= 0], minlength=self.r)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (isinstance(other, Partition) and self.r == other.r
                and np.array_equal(self.assignment, other.assignment))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "{}(n={}, r={})".format(self.__class__.__name__, self.n, self.r)


def normalize_columns(z):
    """Scale every nonempty column of ``Z`` to unit l2 norm.

    Zero rows and empty communities are left untouched.
    """
    norms = np.sqrt(z.column_norms_sq())
    scale = np.ones(z.r)
    np.divide(1.0, norms, out=scale, where=norms > 0)
    return ScaledAssignment(z.v.copy(), z.w * scale[z.v], z.r)


def reconstruct_entry(z, theta, i, j):
    return float(z.w[i] * _theta(theta)[z.v[i], z.v[j]] * z.w[j])


def reconstruct(z, theta):
    """Dense ``Z theta Z^T``; meant for small graphs."""
    dense = z.to_dense()
    return dense.dot(_theta(theta)).dot(dense.T)


def project_adjacency(g, z):
    """``Z^T A Z`` computed over the stored entries of ``A``."""
    r = z.r
    rows, cols, values = g.entries()
    weights = values * z.w[rows] * z.w[cols]
    theta = np.bincount(z.v[rows] * r + z.v[cols], weights=weights, minlength=r * r).reshape(r, r)
    return (theta + theta.T) / 2


def _check_sizes(g, z, theta=None):
    if z.n != g.n:
        raise DimensionError("factor has {} rows but the graph has {} nodes".format(z.n, g.n))
    if theta is not None and _theta(theta).shape != (z.r, z.r):
        raise DimensionError("theta must be {0}x{0}".format(z.r))


def frobenius_error(g, z, theta):
    """``||A - Z theta Z^T||_F^2`` in ``O(nnz + r^2)``.

    Columns of ``Z`` have disjoint supports, so ``Z^T Z = D`` is diagonal and
    ``||Z theta Z^T||_F^2 = sum_kl D_k theta_kl^2 D_l`` holds whether or not
    ``Z`` is normalized.
    """
    _check_sizes(g, z, theta)
    theta = _theta(theta)
    rows, cols, values = g.entries()
    fitted = z.w[rows] * theta[z.v[rows], z.v[cols]] * z.w[cols]
    d = z.column_norms_sq()
    error = float(np.dot(values, values)) - 2.0 * float(np.dot(values, fitted)) \
        + float(d.dot(theta * theta).dot(d))
    return max(error, 0.0)


def kl_divergence(g, z, theta):
    """Generalized KL divergence ``sum A log(A / B) - A + B`` with ``B = Z theta Z^T``.

    Returns ``inf`` when a positive entry of ``A`` is fitted by zero.
    """
    _check_sizes(g, z, theta)
    theta = _theta(theta)
    rows, cols, values = g.entries()
    fitted = z.w[rows] * theta[z.v[rows], z.v[cols]] * z.w[cols]
    if np.any(fitted <= 0):
        return float("inf")
    s = z.column_sums()
    fitted_total = float(s.dot(theta).dot(s))
    return float(np.dot(values, np.log(values / fitted))) - float(values.sum()) + fitted_total


@accepts(config_context, policy="zero_row_policy", seed="seed")
def to_partition(z, policy="random", seed=None):
    """Hard partition from ``Z``; zero rows are resolved by ``policy``.

    * ``random`` draws a uniform community for each zero row (seeded),
    * ``error`` raises :class:`~otrisym.errors.ZeroRowError`,
    * ``singleton`` opens a new community for each zero row.
    """
    assignment = z.v.copy()
    zero = z.zero_rows()
    r = z.r
    if zero.size:
        if policy == "error":
            raise ZeroRowError(zero)
        if policy == "random":
            assignment[zero] = np.random.default_rng(seed).integers(0, r, size=zero.size)
        else:
            assignment[zero] = r + np.arange(zero.size)
            r += zero.size
        log.debug("resolved %d zero rows with policy %s", zero.size, policy)
    return Partition(assignment, r)


@accepts(config_context, r="count", seed="seed")
def random_partition(n, r, seed=None):
    """i.i.d. uniform community indices."""
    return Partition(np.random.default_rng(seed).integers(0, r, size=n), r)


def factors_from_partition(g, partition, r=None):
    """Unit weights on the partition's supports, column-normalized, ``theta = Z^T A Z``."""
    r = partition.r if r is None else r
    z = normalize_columns(ScaledAssignment(partition.assignment, np.ones(partition.n), r))
    _check_sizes(g, z)
    return z, MixingMatrix(project_adjacency(g, z))


def dump_factors(z, theta, path):
    data = {
        "r": z.r,
        "v": z.v.tolist(),
        "w": z.w.tolist(),
        "theta": _theta(theta).tolist(),
    }
    with open(path, "w") as f:
        json.dump(data, f)


def load_factors(path):
    with open(path) as f:
        data = json.load(f)
    return ScaledAssignment(data["v"], data["w"], data["r"]), MixingMatrix(data["theta"])
