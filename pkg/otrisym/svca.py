# -*- coding: utf-8 -*-
"""SVCA initialization.

Each centroid is the average of the ``p`` columns of ``A`` that project the
most onto a random direction of the dominant eigenspace of ``A``; every node
then joins the centroid closest in angle to its column.
"""
import collections
import logging

import numpy as np
import scipy.linalg

from .config import SvcaConfig
from .errors import ConvergenceError, DimensionError, NumericalError
from .frost import update_theta
from .model import ScaledAssignment, MixingMatrix, normalize_columns, to_partition

__all__ = ["Basis", "SvcaResult", "dominant_subspace", "svca_select", "onmf_assign", "svca_init"]

log = logging.getLogger(__name__)

Basis = collections.namedtuple("Basis", "vectors eigenvalues residual iterations")
SvcaResult = collections.namedtuple("SvcaResult", "assignment theta partition")


def _check_rank(g, r):
    if r < 1:
        raise DimensionError("r must be positive")
    if r > g.n:
        raise DimensionError("r={} exceeds the number of nodes n={}".format(r, g.n))


def _seeds(cfg):
    """Independent generators for the eigensolver start and the directions."""
    start, directions = np.random.SeedSequence(cfg.seed).spawn(2)
    return np.random.default_rng(start), np.random.default_rng(directions)


def dominant_subspace(g, r, cfg=None, rng=None):
    """Orthonormal eigenvectors of the ``r`` eigenvalues of ``A`` largest in magnitude.

    Blocked subspace iteration with ``r + 2`` vectors and a Rayleigh-Ritz step
    per multiplication. Converged when
    ``||A X - X diag(lambda)||_F / ||A X||_F < cfg.eigensolver_tol`` on the
    ``r`` wanted Ritz pairs. Each vector's largest entry is made positive.

    :raises ConvergenceError: after ``cfg.eigensolver_max_iter`` multiplications
    """
    cfg = cfg or SvcaConfig()
    _check_rank(g, r)
    if rng is None:
        rng = _seeds(cfg)[0]
    a = g.adjacency.astype(float)
    block = min(g.n, r + 2)
    q, _ = scipy.linalg.qr(rng.standard_normal((g.n, block)), mode="economic")

    residual = np.inf
    for iteration in range(1, cfg.eigensolver_max_iter + 1):
        y = a.dot(q)
        h = q.T.dot(y)
        values, vectors = scipy.linalg.eigh((h + h.T) / 2)
        order = np.lexsort((-values, -np.abs(values)))
        values, vectors = values[order], vectors[:, order]
        x, ax = q.dot(vectors), y.dot(vectors)
        wanted = ax[:, :r] - x[:, :r] * values[:r]
        scale = np.linalg.norm(ax[:, :r])
        residual = np.linalg.norm(wanted) / scale if scale > 0 else 0.0
        if residual < cfg.eigensolver_tol:
            break
        q, _ = scipy.linalg.qr(ax, mode="economic")
    else:
        raise ConvergenceError("subspace iteration did not converge in {} iterations (residual {:.3g})"
                               .format(cfg.eigensolver_max_iter, residual),
                               residual=residual, iterations=cfg.eigensolver_max_iter)

    x = x[:, :r]
    peaks = np.argmax(np.abs(x), axis=0)
    x = x * np.where(x[peaks, np.arange(r)] < 0, -1.0, 1.0)
    log.debug("dominant subspace of rank %d after %d iterations (residual %.3g)", r, iteration, residual)
    return Basis(x, values[:r], residual, iteration)


def svca_select(g, r, cfg=None, basis=None, rng=None):
    """Centroids ``W`` (``n x r``), one averaged group of ``p`` columns of ``A`` each.

    For centroid ``k`` a standard normal combination of the basis vectors is
    projected orthogonally to the centroids already chosen. Columns are scored
    by their inner product with it, for the direction and its opposite; the
    sign whose ``p`` best scores sum higher wins.

    :raises NumericalError: if ``cfg.direction_retries`` draws in a row score
        every column zero
    """
    cfg = cfg or SvcaConfig()
    _check_rank(g, r)
    if rng is None or basis is None:
        start, directions = _seeds(cfg)
        basis = basis if basis is not None else dominant_subspace(g, r, cfg, rng=start)
        rng = rng if rng is not None else directions
    p = cfg.resolve_p(g.n, r)
    a = g.adjacency.astype(float)
    vectors = basis.vectors
    centroids = np.zeros((g.n, r))

    for k in range(r):
        chosen = None
        span = scipy.linalg.orth(centroids[:, :k]) if k else None
        for _ in range(cfg.direction_retries):
            u = vectors.dot(rng.standard_normal(vectors.shape[1]))
            if span is not None and span.size:
                u -= span.dot(span.T.dot(u))
            norm = np.linalg.norm(u)
            if norm <= 1e-12:
                continue
            scores = a.dot(u / norm)
            if not np.any(np.abs(scores) > 1e-12 * max(1.0, np.abs(scores).max())):
                continue
            best = None
            for signed in (scores, -scores):
                top = np.argsort(-signed, kind="stable")[:p]
                total = signed[top].sum()
                if best is None or total > best[0]:
                    best = (total, top)
            chosen = best[1]
            break
        if chosen is None:
            raise NumericalError("no usable direction for centroid {} after {} draws"
                                 .format(k, cfg.direction_retries))
        centroids[:, k] = np.asarray(a[:, chosen].mean(axis=1)).ravel()
    return centroids


def onmf_assign(g, centroids):
    """Assign every node to the centroid closest in angle to its column of ``A``.

    The weight of node ``j`` is the least-squares scale
    ``<A[:, j], W[:, k]> / ||W[:, k]||^2``; nodes without edges or with no
    positive score get a zero row. Zero centroids are dropped (with a warning),
    which lowers ``r``.

    :return: ``(ScaledAssignment, MixingMatrix)`` with normalized columns and
        ``theta = Z^T A Z``
    """
    centroids = np.asarray(centroids, dtype=float)
    norms = np.linalg.norm(centroids, axis=0)
    keep = norms > 0
    if not keep.all():
        log.warning("dropping %d zero centroid(s)", int((~keep).sum()))
        centroids, norms = centroids[:, keep], norms[keep]
    if centroids.shape[1] == 0:
        raise NumericalError("every centroid is zero")

    a = g.adjacency.astype(float)
    scores = np.asarray(a.dot(centroids))
    column_norms = np.sqrt(np.asarray(a.multiply(a).sum(axis=0)).ravel())
    cosines = scores / norms
    v = np.argmax(cosines, axis=1)
    best = scores[np.arange(g.n), v]
    w = np.where((column_norms > 0) & (best > 0), best / norms[v] ** 2, 0.0)
    z = normalize_columns(ScaledAssignment(v, w, centroids.shape[1]))
    return z, update_theta(g, z)


def svca_init(g, r, cfg=None):
    """SVCA factors and partition.

    Communities lost to zero centroids come back as empty columns, so the
    result always has ``r`` columns. Zero rows get a random community (seeded
    by ``cfg.seed``) in the partition.

    :return: :class:`SvcaResult` ``(assignment, theta, partition)``
    """
    cfg = cfg or SvcaConfig()
    _check_rank(g, r)
    start, directions = _seeds(cfg)
    basis = dominant_subspace(g, r, cfg, rng=start)
    centroids = svca_select(g, r, cfg, basis=basis, rng=directions)
    z, theta = onmf_assign(g, centroids)
    if z.r < r:
        padded = np.zeros((r, r))
        padded[:z.r, :z.r] = theta.theta
        z, theta = ScaledAssignment(z.v, z.w, r), MixingMatrix(padded)
    partition = to_partition(z, "random", cfg.seed)
    log.debug("svca: %d of %d communities used, %d zero rows", np.unique(z.v[z.w > 0]).size, r,
              z.zero_rows().size)
    return SvcaResult(z, theta, partition)
