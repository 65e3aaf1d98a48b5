# -*- coding: utf-8 -*-
"""Planted-partition graphs sampled from the Poisson degree-corrected block model.

``A[i, j] ~ Poisson((Z theta Z^T)[i, j])`` for ``i < j``, and every node gets
``Poisson((Z theta Z^T)[i, i] / 2)`` self-edges, each adding ``2`` to
``A[i, i]``.
"""
import collections
import json
import logging

import numpy as np

from .config import Config
from .graph import Graph
from .model import ScaledAssignment, MixingMatrix, Partition, _theta
from .validation import Optional, Nullable, Enum, ValidationError
from .validation.contexts import config_context

__all__ = ["PlantedSpec", "PlantedFactors", "balanced_sizes", "build_planted_factors",
           "sample_graph", "generate", "write_spec"]

log = logging.getLogger(__name__)

PlantedFactors = collections.namedtuple("PlantedFactors", "assignment theta partition")


class PlantedSpec(Config):
    """Parameters of a planted partition.

    ``mu`` is the expected fraction of edge ends joining different
    communities; ``average_degree`` sets the expected total ``n * <d>``.
    Power-law propensities take integer values in
    ``[min_degree, max_degree]`` with probability proportional to
    ``k^-gamma``.
    """

    schema = {
        "n": "count",
        "r": "count",
        Optional("sizes", None): Nullable(["count"]),
        Optional("propensity", "uniform"): Enum("uniform", "power_law"),
        Optional("gamma", 2.0): "nonnegative",
        Optional("min_degree", 1): "count",
        Optional("max_degree", 50): "count",
        Optional("mu", 0.1): "probability",
        Optional("average_degree", 20.0): "nonnegative",
        Optional("seed", None): "seed",
    }

    def __init__(self, **kwargs):
        super(PlantedSpec, self).__init__(**kwargs)
        if self.sizes is not None:
            self.sizes = list(self.sizes)
            if len(self.sizes) != self.r:
                raise ValidationError(config_context, "must list r={} sizes".format(self.r), self.sizes) \
                    .at("sizes")
            if sum(self.sizes) != self.n:
                raise ValidationError(config_context, "must sum to n={}".format(self.n), self.sizes) \
                    .at("sizes")
        elif self.r > self.n:
            raise ValidationError(config_context, "must not exceed n={}".format(self.n), self.r) \
                .at("r")
        if self.average_degree <= 0:
            raise ValidationError(config_context, "must be positive", self.average_degree) \
                .at("average_degree")
        if self.min_degree > self.max_degree:
            raise ValidationError(config_context, "must not exceed max_degree", self.min_degree) \
                .at("min_degree")

    def community_sizes(self):
        return list(self.sizes) if self.sizes is not None else balanced_sizes(self.n, self.r)


def balanced_sizes(n, r):
    base, extra = divmod(n, r)
    return [base + 1 if k < extra else base for k in range(r)]


def _propensities(spec, rng):
    if spec.propensity == "uniform":
        return np.ones(spec.n)
    support = np.arange(spec.min_degree, spec.max_degree + 1, dtype=float)
    cdf = np.cumsum(support ** -spec.gamma)
    cdf /= cdf[-1]
    draws = np.searchsorted(cdf, rng.random(spec.n), side="right")
    return support[np.minimum(draws, support.size - 1)]


def build_planted_factors(spec):
    """Planted ``(Z, theta)`` and partition for ``spec``.

    Communities are contiguous node ranges. With ``s_k = sum_i Z[i, k]`` and
    ``pi_k`` the share of propensity mass in community ``k``, the expected
    block totals ``M_kl = theta_kl s_k s_l`` are ``(1 - mu) T pi_k`` on the
    diagonal and ``mu T pi_k pi_l / sum_{k != l} pi_k pi_l`` off it, where
    ``T = n <d>``. A single community takes all of ``T``.
    """
    rng = np.random.default_rng(spec.seed)
    sizes = np.array(spec.community_sizes(), dtype=np.int64)
    r = sizes.size
    v = np.repeat(np.arange(r), sizes)
    propensity = _propensities(spec, rng)
    scale = np.sqrt(np.bincount(v, weights=propensity ** 2, minlength=r))
    z = ScaledAssignment(v, propensity / scale[v], r)

    total = spec.n * float(spec.average_degree)
    share = np.bincount(v, weights=propensity, minlength=r) / propensity.sum()
    if r == 1:
        blocks = np.array([[total]])
    else:
        cross = np.outer(share, share)
        np.fill_diagonal(cross, 0.0)
        blocks = spec.mu * total * cross / cross.sum()
        blocks[np.diag_indices(r)] = (1 - spec.mu) * total * share
    mass = z.column_sums()
    theta = blocks / np.outer(mass, mass)
    return PlantedFactors(z, MixingMatrix(theta), Partition(v, r))


def sample_graph(z, theta, seed=None):
    """Sample ``A`` block pair by block pair; blocks with ``theta = 0`` are skipped."""
    rng = np.random.default_rng(seed)
    theta = _theta(theta)
    members = [np.flatnonzero(z.v == k) for k in range(z.r)]
    heads, tails, counts = [], [], []
    for k in range(z.r):
        for l in range(k, z.r):
            if theta[k, l] <= 0 or not members[k].size or not members[l].size:
                continue
            rates = theta[k, l] * np.outer(z.w[members[k]], z.w[members[l]])
            if k == l:
                rows, cols = np.triu_indices(members[k].size, 1)
                pair_counts = rng.poisson(rates[rows, cols])
                loops = rng.poisson(np.diag(rates) / 2)
                rows = np.concatenate([rows, np.arange(members[k].size)])
                cols = np.concatenate([cols, np.arange(members[k].size)])
                pair_counts = np.concatenate([pair_counts, loops])
            else:
                pair_counts = rng.poisson(rates).ravel()
                rows, cols = np.divmod(np.arange(pair_counts.size), members[l].size)
            hit = pair_counts > 0
            heads.append(members[k][rows[hit]])
            tails.append(members[l][cols[hit]])
            counts.append(pair_counts[hit])
    if heads:
        edges = np.column_stack([np.concatenate(heads), np.concatenate(tails)])
        multiplicities = np.concatenate(counts)
    else:
        edges, multiplicities = np.zeros((0, 2), dtype=np.int64), np.zeros(0, dtype=np.int64)
    return Graph.from_edges(z.n, edges, multiplicities)


def generate(spec):
    """``(Graph, Partition)`` for ``spec``; the sampling seed is derived from ``spec.seed``."""
    factors = build_planted_factors(spec)
    sample_seed = None if spec.seed is None else np.random.SeedSequence(spec.seed).spawn(1)[0]
    graph = sample_graph(factors.assignment, factors.theta, sample_seed)
    log.info("generated %s with r=%d, mu=%.3g", graph, factors.partition.r, spec.mu)
    return graph, factors.partition


def write_spec(spec, path):
    with open(path, "w") as f:
        json.dump(spec.as_dict(), f, indent=2, sort_keys=True)
