# -*- coding: utf-8 -*-
"""FROST: alternating minimization of ``||A - Z theta Z^T||_F^2``.

``theta`` has the closed form ``Z^T A Z`` for column-normalized ``Z``; each
row of ``Z`` is updated by minimizing, for every community, the quartic
``a z^4 + b z^2 + c z`` that the error reduces to when only that row moves.
"""
import collections
import csv
import logging

import numpy as np

from .config import FrostConfig
from .errors import DimensionError
from .model import (ScaledAssignment, MixingMatrix, normalize_columns, frobenius_error,
                    project_adjacency, _theta)

__all__ = ["QuarticCoeffs", "QuarticMinimum", "RowUpdate", "TraceEntry", "FrostResult",
           "update_theta", "quartic_coeffs", "minimize_quartic", "update_row", "frost_solve",
           "write_trace_csv"]

log = logging.getLogger(__name__)

QuarticCoeffs = collections.namedtuple("QuarticCoeffs", "a b c")
QuarticMinimum = collections.namedtuple("QuarticMinimum", "z objective used_default")
RowUpdate = collections.namedtuple("RowUpdate", "community weight error_change")
TraceEntry = collections.namedtuple("TraceEntry", "iteration frobenius_error defaults_fired")
FrostResult = collections.namedtuple("FrostResult", "assignment theta trace")


def update_theta(g, z):
    """Optimal ``theta = Z^T A Z`` for a column-normalized ``Z``."""
    return MixingMatrix(project_adjacency(g, z))


def _quartic_values(a, b, c, z):
    z2 = z * z
    return (a * z2 + b) * z2 + c * z


def _depressed_cubic_roots(p, q):
    """Real roots of ``t^3 + p t + q = 0`` as a ``(3, m)`` array, ``nan`` padded."""
    roots = np.full((3,) + p.shape, np.nan)
    half_q = q / 2
    disc = half_q * half_q + (p / 3) ** 3
    trig = (disc <= 0) & (p < 0)
    single = ~trig
    if single.any():
        sq = np.sqrt(disc[single])
        roots[0, single] = np.cbrt(-half_q[single] + sq) + np.cbrt(-half_q[single] - sq)
    if trig.any():
        pt, qt = p[trig], q[trig]
        radius = 2 * np.sqrt(-pt / 3)
        phi = np.arccos(np.clip(3 * qt / (2 * pt) * np.sqrt(-3 / pt), -1.0, 1.0)) / 3
        for k in range(3):
            roots[k, trig] = radius * np.cos(phi - 2 * np.pi * k / 3)
    # one Newton step per root, kept only where it shrinks the residual
    residual = (roots * roots + p) * roots + q
    with np.errstate(invalid="ignore", divide="ignore"):
        polished = roots - residual / (3 * roots * roots + p)
    better = np.abs((polished * polished + p) * polished + q) < np.abs(residual)
    roots[better] = polished[better]
    return roots


def _minimize_quartics(a, b, c, default):
    """Vectorized core of :func:`minimize_quartic`; returns ``(z, f(z), used_default)``."""
    a, b, c = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (a, b, c)))
    z = np.full(a.shape, np.nan)

    quartic = a > 0
    if quartic.any():
        aq, bq, cq = a[quartic], b[quartic], c[quartic]
        roots = _depressed_cubic_roots(bq / (2 * aq), cq / (4 * aq))
        values = np.where(roots > 0, _quartic_values(aq, bq, cq, roots), np.inf)
        best = np.argmin(values, axis=0)
        columns = np.arange(aq.size)
        best_value = values[best, columns]
        z[quartic] = np.where(best_value < 0, roots[best, columns], np.nan)

    flat = ~quartic
    if flat.any():
        bf, cf = b[flat], c[flat]
        with np.errstate(invalid="ignore", divide="ignore"):
            vertex = -cf / (2 * bf)
        z[flat] = np.where((bf > 0) & (vertex > 0), vertex, np.nan)

    # constrained minimum at the boundary with zero or negative slope
    at_zero = np.isnan(z) & ((quartic & (c <= 0)) | (~quartic & (b >= 0) & (c == 0)))
    z[at_zero] = 0.0
    used_default = np.isnan(z)
    z[used_default] = default
    return z, _quartic_values(a, b, c, z), used_default


def minimize_quartic(q, default_value):
    """Minimize ``f(z) = a z^4 + b z^2 + c z`` over ``z >= 0``.

    Candidates are the positive real roots of ``f'``, obtained with Cardano's
    formula (trigonometric form when the cubic has three real roots). The best
    one is returned when ``f`` is negative there. A minimum at ``z = 0`` is
    returned as ``0`` when the slope there is not positive; otherwise (positive
    slope at ``0``, or ``f`` unbounded for ``a = 0``) ``default_value`` is
    returned with ``used_default`` set.

    :param q: :class:`QuarticCoeffs`
    :return: :class:`QuarticMinimum` ``(z, f(z), used_default)``
    """
    z, value, used_default = _minimize_quartics(np.atleast_1d(q.a), np.atleast_1d(q.b),
                                                np.atleast_1d(q.c), default_value)
    return QuarticMinimum(float(z[0]), float(value[0]), bool(used_default[0]))


class _RowSweeper(object):
    """Row-update state for fixed ``theta``.

    Keeps ``S[k] = sum_j (w_j theta[v_j, k])^2`` so that the ``b`` coefficient of
    every row costs ``O(r)`` and ``c`` costs ``O(r d_i)``.
    """

    def __init__(self, g, z, theta, default_value):
        self.g = g
        self.v = z.v.copy()
        self.w = z.w.copy()
        self.r = z.r
        self.theta = _theta(theta)
        self.theta_diag = np.diag(self.theta).copy()
        self.default_value = default_value
        self.refresh()

    def refresh(self):
        d = np.bincount(self.v, weights=self.w * self.w, minlength=self.r)
        self.totals = d.dot(self.theta * self.theta)

    def coefficients(self, i):
        nbrs, counts = self.g.neighbors(i)
        off = nbrs != i
        nbrs, counts = nbrs[off], counts[off]
        own = self.w[i] * self.theta[self.v[i]]
        a = self.theta_diag * self.theta_diag
        b = 2 * (self.totals - own * own - self.theta_diag * self.g.diagonal[i])
        c = -4 * self.theta[:, self.v[nbrs]].dot(counts * self.w[nbrs])
        return a, b, c

    def step(self, i):
        a, b, c = self.coefficients(i)
        z, values, used_default = _minimize_quartics(a, b, c, self.default_value)
        k = int(np.argmin(values))
        old_k, old_w = self.v[i], self.w[i]
        old_value = ((a[old_k] * old_w * old_w + b[old_k]) * old_w + c[old_k]) * old_w
        own = old_w * self.theta[old_k]
        new = z[k] * self.theta[k]
        self.totals += new * new - own * own
        self.v[i], self.w[i] = k, z[k]
        return k, float(z[k]), float(values[k] - old_value), bool(used_default[k])

    def assignment(self):
        return ScaledAssignment(self.v.copy(), self.w.copy(), self.r)


def quartic_coeffs(g, z, theta, i, k):
    """Coefficients of the error as a function of ``Z[i, k]``, row ``i`` being otherwise zero."""
    theta = _theta(theta)
    nbrs, counts = g.neighbors(i)
    others = nbrs != i
    nbrs, counts = nbrs[others], counts[others]
    mask = np.arange(z.n) != i
    profile = z.w[mask] * theta[z.v[mask], k]
    return QuarticCoeffs(
        a=float(theta[k, k] ** 2),
        b=float(2 * (profile.dot(profile) - theta[k, k] * g.diagonal[i])),
        c=float(-4 * np.dot(counts, z.w[nbrs] * theta[z.v[nbrs], k])),
    )


def update_row(g, z, theta, i, default_value=None):
    """Best ``(community, weight)`` for row ``i`` with the other rows fixed.

    ``z`` is not modified. Ties between communities go to the smallest index.

    :return: :class:`RowUpdate` with the change of the Frobenius error
    """
    if default_value is None:
        default_value = np.sqrt(float(z.r) / z.n)
    sweeper = _RowSweeper(g, z, theta, default_value)
    k, weight, change, _ = sweeper.step(i)
    return RowUpdate(k, weight, change)


def _check_init(g, z, theta):
    if z.r < 1:
        raise DimensionError("r must be positive")
    if z.r > g.n:
        raise DimensionError("r={} exceeds the number of nodes n={}".format(z.r, g.n))
    if z.n != g.n:
        raise DimensionError("factor has {} rows but the graph has {} nodes".format(z.n, g.n))
    if _theta(theta).shape != (z.r, z.r):
        raise DimensionError("theta must be {0}x{0}".format(z.r))


def frost_solve(g, init, cfg=None):
    """Run FROST from ``init = (Z, theta)``.

    Every outer iteration updates all rows of ``Z`` in turn, normalizes the
    columns and sets ``theta = Z^T A Z``. It stops after
    ``cfg.max_outer_iterations`` iterations, when the error is at most
    ``cfg.abs_tol``, or when it changed by at most ``cfg.rel_tol`` relative
    to the previous iteration.

    :param init: ``(ScaledAssignment, MixingMatrix)``
    :param cfg: :class:`~otrisym.config.FrostConfig`
    :return: :class:`FrostResult` whose trace has one :class:`TraceEntry` per iteration
    """
    cfg = cfg or FrostConfig()
    z, theta = init
    _check_init(g, z, theta)
    default_value = cfg.resolve_default_weight(g.n, z.r)
    rng = np.random.default_rng(cfg.seed) if cfg.node_order == "shuffled" else None

    sweeper = _RowSweeper(g, z, theta, default_value)
    previous = frobenius_error(g, z, theta)
    trace = []
    for iteration in range(1, cfg.max_outer_iterations + 1):
        order = rng.permutation(g.n) if rng is not None else range(g.n)
        defaults_fired = 0
        for i in order:
            defaults_fired += sweeper.step(i)[3]
        z = normalize_columns(sweeper.assignment())
        theta = update_theta(g, z)
        sweeper = _RowSweeper(g, z, theta, default_value)
        error = frobenius_error(g, z, theta)
        trace.append(TraceEntry(iteration, error, defaults_fired))
        log.debug("frost iteration %d: error %.12g, %d default weights", iteration, error, defaults_fired)
        if error <= cfg.abs_tol or abs(previous - error) <= cfg.rel_tol * previous:
            break
        previous = error
    log.info("frost stopped after %d iterations with error %.12g", len(trace), trace[-1].frobenius_error)
    return FrostResult(z, theta, trace)


def write_trace_csv(trace, path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(TraceEntry._fields)
        for entry in trace:
            writer.writerow([entry.iteration, repr(entry.frobenius_error), entry.defaults_fired])
