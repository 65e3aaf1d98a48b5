# -*- coding: utf-8 -*-
"""Degree-corrected block model log-likelihood and local search over partitions.

With ``m[k, l]`` the number of edge ends between communities ``k`` and ``l``
(diagonal blocks counted twice) and ``kappa[k]`` the degree sum of community
``k``, the unnormalized log-likelihood is

    L = sum_kl m_kl log(m_kl / (kappa_k kappa_l))
      = sum_kl m_kl log m_kl - 2 sum_k kappa_k log kappa_k

with ``0 log 0 = 0``.
"""
import collections
import heapq
import logging

import numpy as np
import scipy.sparse as sp
from scipy.special import xlogy

from .errors import DimensionError
from .model import Partition, random_partition

__all__ = ["BlockStats", "MoveDelta", "InferenceResult", "block_stats", "log_likelihood",
           "move_delta", "kn_infer", "klem_infer"]

log = logging.getLogger(__name__)

MoveDelta = collections.namedtuple("MoveDelta", "node source target delta_ll")
InferenceResult = collections.namedtuple("InferenceResult", "partition log_likelihood sweeps")

IMPROVEMENT_TOL = 1e-10


def _xlogx(x):
    return xlogy(x, x)


class BlockStats(object):
    """Sufficient statistics ``(m, kappa)`` of a partition."""

    def __init__(self, m, kappa):
        self.m = np.array(m, dtype=np.int64)
        self.kappa = np.array(kappa, dtype=np.int64)

    @property
    def r(self):
        return self.kappa.size

    def copy(self):
        return BlockStats(self.m, self.kappa)

    def __eq__(self, other):
        return (isinstance(other, BlockStats) and np.array_equal(self.m, other.m)
                and np.array_equal(self.kappa, other.kappa))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "BlockStats(m={}, kappa={})".format(self.m.tolist(), self.kappa.tolist())


def block_stats(g, partition):
    if partition.n != g.n:
        raise DimensionError("partition has {} nodes but the graph has {}".format(partition.n, g.n))
    rows, cols, values = g.entries()
    p = partition.assignment
    r = partition.r
    m = sp.coo_matrix((values, (p[rows], p[cols])), shape=(r, r)).toarray()
    m = np.rint(m).astype(np.int64)
    return BlockStats(m, m.sum(axis=1))


def log_likelihood(stats):
    return float(_xlogx(stats.m).sum() - 2.0 * _xlogx(stats.kappa).sum())


class _MoveState(object):
    """A partition with its block statistics, updated in place by node moves."""

    def __init__(self, g, partition, stats=None):
        self.g = g
        self.assignment = partition.assignment.copy()
        self.r = partition.r
        stats = stats if stats is not None else block_stats(g, partition)
        self.m = stats.m.copy()
        self.kappa = stats.kappa.copy()

    def neighbor_totals(self, i):
        """Edge multiplicities from ``i`` to every community, self-loops excluded."""
        nbrs, counts = self.g.neighbors(i)
        others = nbrs != i
        totals = np.bincount(self.assignment[nbrs[others]], weights=counts[others], minlength=self.r)
        return np.rint(totals).astype(np.int64)

    def deltas(self, i, totals=None):
        """Change of the log-likelihood for moving ``i`` to every community.

        The entry of the current community is ``-inf``.
        """
        t = self.neighbor_totals(i) if totals is None else totals
        a = self.assignment[i]
        loop = self.g.diagonal[i]
        d = self.g.degrees[i]
        m, kappa = self.m, self.kappa
        diag = np.diag(m)
        touched = np.flatnonzero(t)
        touched = touched[touched != a]

        leave_aa = _xlogx(m[a, a] - 2 * t[a] - loop) - _xlogx(m[a, a])
        leave_row = (_xlogx(m[a, touched] - t[touched]) - _xlogx(m[a, touched])).sum()
        # entries (a, b) are counted in leave_row only when t[b] > 0
        leave_ab = _xlogx(m[a] - t) - _xlogx(m[a])
        join_bb = _xlogx(diag + 2 * t + loop) - _xlogx(diag)
        cross_ab = _xlogx(m[a] + t[a] - t) - _xlogx(m[a])
        join_rows = (_xlogx(m[:, touched] + t[touched]) - _xlogx(m[:, touched])).sum(axis=1)
        join_bb_once = _xlogx(diag + t) - _xlogx(diag)
        kappa_change = (_xlogx(kappa[a] - d) - _xlogx(kappa[a])) + (_xlogx(kappa + d) - _xlogx(kappa))

        delta = (leave_aa + join_bb + 2 * cross_ab + 2 * (leave_row - leave_ab)
                 + 2 * (join_rows - join_bb_once) - 2 * kappa_change)
        delta[a] = -np.inf
        return delta

    def best_move(self, i):
        delta = self.deltas(i)
        target = int(np.argmax(delta))
        return MoveDelta(int(i), int(self.assignment[i]), target, float(delta[target]))

    def apply(self, i, target, totals=None):
        t = self.neighbor_totals(i) if totals is None else totals
        source = self.assignment[i]
        if source == target:
            return
        loop = self.g.diagonal[i]
        touched = np.flatnonzero(t)
        self.m[source, touched] -= t[touched]
        self.m[touched, source] -= t[touched]
        self.m[source, source] -= loop
        self.m[target, touched] += t[touched]
        self.m[touched, target] += t[touched]
        self.m[target, target] += loop
        self.kappa[source] -= self.g.degrees[i]
        self.kappa[target] += self.g.degrees[i]
        self.assignment[i] = target

    def stats(self):
        return BlockStats(self.m, self.kappa)

    def partition(self):
        return Partition(self.assignment.copy(), self.r)


def move_delta(g, partition, stats, i, to):
    """Log-likelihood change of moving node ``i`` to community ``to``.

    Only the entries of ``m`` in the rows and columns of ``i``'s neighbor
    communities and of the source and target change, so the cost is
    ``O(r min(r, d_i) + d_i)``.
    """
    if to == partition.assignment[i]:
        raise ValueError("node {} is already in community {}".format(i, to))
    state = _MoveState(g, partition, stats)
    return MoveDelta(int(i), int(partition.assignment[i]), int(to), float(state.deltas(i)[to]))


def _initial_state(g, r, init, seed):
    if r < 1:
        raise DimensionError("r must be positive")
    if init is None:
        init = random_partition(g.n, r, seed)
    elif init.r > r:
        raise DimensionError("initial partition uses r={} > {}".format(init.r, r))
    return _MoveState(g, Partition(init.assignment, r))


def _greedy_pass(state, rank):
    """Move every node once, always taking the unlocked node with the largest best delta.

    Cached best moves are refreshed for the neighbors of each moved node; a
    popped node is re-evaluated and pushed back when its fresh delta falls
    below the next cached one.

    :return: list of applied :class:`MoveDelta`, in order
    """
    n = state.g.n
    locked = np.zeros(n, dtype=bool)
    version = np.zeros(n, dtype=np.int64)
    heap = [(-state.best_move(i).delta_ll, rank[i], i, 0) for i in range(n)]
    heapq.heapify(heap)
    moves = []
    while heap:
        _, _, i, stamp = heapq.heappop(heap)
        if locked[i] or stamp != version[i]:
            continue
        move = state.best_move(i)
        if heap and move.delta_ll < -heap[0][0] - IMPROVEMENT_TOL:
            version[i] += 1
            heapq.heappush(heap, (-move.delta_ll, rank[i], i, version[i]))
            continue
        state.apply(i, move.target)
        locked[i] = True
        moves.append(move)
        for j in state.g.neighbors(i)[0]:
            if not locked[j]:
                version[j] += 1
                heapq.heappush(heap, (-state.best_move(j).delta_ll, rank[j], j, version[j]))
    return moves


def kn_infer(g, r, init=None, seed=None, max_sweeps=100):
    """Kernighan-Lin style maximization of the log-likelihood.

    A pass moves every node exactly once. Each step takes the unlocked node
    whose best move raises the objective the most (or lowers it the least),
    moves it and locks it. The best state seen along the pass is then
    restored. Passes stop when one brings no improvement. ``seed`` breaks
    ties between equal deltas and draws the random start.

    :param init: starting :class:`~otrisym.model.Partition`, random when ``None``
    :return: :class:`InferenceResult`
    """
    state = _initial_state(g, r, init, seed)
    rank = np.random.default_rng(seed).permutation(g.n)
    current = log_likelihood(state.stats())
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        start = current
        if r == 1:
            break
        best, best_prefix = current, 0
        moves = _greedy_pass(state, rank)
        for step, move in enumerate(moves, 1):
            current += move.delta_ll
            if current > best + IMPROVEMENT_TOL:
                best, best_prefix = current, step
        for move in reversed(moves[best_prefix:]):
            state.apply(move.node, move.source)
        current = log_likelihood(state.stats())
        log.debug("kn pass %d: %d of %d moves kept, log-likelihood %.12g", sweeps, best_prefix,
                  len(moves), current)
        if current - start <= IMPROVEMENT_TOL:
            break
    log.info("kn finished after %d passes with log-likelihood %.12g", sweeps, current)
    return InferenceResult(state.partition(), current, sweeps)


def klem_infer(g, r, init=None, seed=None, max_sweeps=1000):
    """Simultaneous-move maximization of the log-likelihood.

    Every sweep evaluates each node's best move against the same frozen state
    and applies all improving moves together. If the combined result does not
    improve, only the single best move is applied instead. Stops when no move improves.

    ``seed`` only draws the initial partition when ``init`` is ``None``.

    :return: :class:`InferenceResult`
    """
    state = _initial_state(g, r, init, seed)
    current = log_likelihood(state.stats())
    sweeps = 0
    while sweeps < max_sweeps and r > 1:
        moves = [state.best_move(i) for i in range(g.n)]
        improving = [move for move in moves if move.delta_ll > IMPROVEMENT_TOL]
        if not improving:
            break
        sweeps += 1
        for move in improving:
            state.apply(move.node, move.target)
        updated = log_likelihood(state.stats())
        if updated <= current + IMPROVEMENT_TOL:
            for move in reversed(improving):
                state.apply(move.node, move.source)
            best = max(improving, key=lambda move: move.delta_ll)
            state.apply(best.node, best.target)
            updated = log_likelihood(state.stats())
            log.debug("klem sweep %d: simultaneous moves do not improve, kept node %d only", sweeps, best.node)
        log.debug("klem sweep %d: %d improving moves, log-likelihood %.12g", sweeps, len(improving), updated)
        current = updated
    log.info("klem finished after %d sweeps with log-likelihood %.12g", sweeps, current)
    return InferenceResult(state.partition(), current, sweeps)
