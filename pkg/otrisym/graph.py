# -*- coding: utf-8 -*-
"""Sparse undirected multigraphs and their text formats.

Edge multiplicities are stored in a symmetric CSR matrix ``A``. A self-edge
contributes ``2`` to ``A[i, i]``, so for graphs read from edge lists the
diagonal is even and ``A.sum()`` is twice the number of edges.
"""
import logging
import re

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import GraphFormatError, EmptyGraphError, DimensionError
from .model import Partition

__all__ = ["Graph", "Labels", "load_edge_list", "save_edge_list", "largest_connected_component",
           "load_labels", "save_labels"]

log = logging.getLogger(__name__)

_NODES_HEADER = re.compile(r"#\s*nodes\s*[:=]\s*(\d+)\s*$", re.IGNORECASE)


class Graph(object):
    """Immutable undirected multigraph.

    :param adjacency: square symmetric matrix of nonnegative integer
        multiplicities (anything :func:`scipy.sparse.csr_matrix` accepts)
    :param node_ids: original identifier of every node, defaults to ``0..n-1``
    """

    def __init__(self, adjacency, node_ids=None):
        adjacency = sp.csr_matrix(adjacency)
        if adjacency.shape[0] != adjacency.shape[1]:
            raise DimensionError("adjacency must be square, got shape {}".format(adjacency.shape))
        if adjacency.nnz and not np.allclose(adjacency.data, np.round(adjacency.data)):
            raise GraphFormatError("edge multiplicities must be integers")
        adjacency = adjacency.astype(np.int64)
        adjacency.sum_duplicates()
        adjacency.eliminate_zeros()
        adjacency.sort_indices()
        if adjacency.nnz and adjacency.data.min() < 0:
            raise GraphFormatError("edge multiplicities must be nonnegative")
        if (adjacency != adjacency.T).nnz:
            raise GraphFormatError("adjacency must be symmetric")

        self.adjacency = adjacency
        self.n = adjacency.shape[0]
        self.degrees = np.asarray(adjacency.sum(axis=1)).ravel().astype(np.int64)
        self.total = int(self.degrees.sum())
        self.diagonal = adjacency.diagonal().astype(np.int64)
        if node_ids is None:
            node_ids = np.arange(self.n, dtype=np.int64)
        self.node_ids = np.array(node_ids, dtype=np.int64)
        if self.node_ids.shape != (self.n,):
            raise DimensionError("expected {} node ids, got {}".format(self.n, self.node_ids.size))
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(adjacency.indptr))
        self._entries = (rows, adjacency.indices.astype(np.int64), adjacency.data.astype(float))
        for array in self._entries + (self.degrees, self.diagonal, self.node_ids):
            array.setflags(write=False)

    @classmethod
    def from_edges(cls, n, edges, multiplicities=None, node_ids=None):
        """Build a graph from ``(i, j)`` pairs; a pair ``(i, i)`` is a self-edge."""
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if multiplicities is None:
            multiplicities = np.ones(len(edges), dtype=np.int64)
        multiplicities = np.asarray(multiplicities, dtype=np.int64)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise GraphFormatError("node index out of range 0..{}".format(n - 1))
        u, v = edges[:, 0], edges[:, 1]
        # both orientations; a self-edge lands twice on the diagonal
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        data = np.concatenate([multiplicities, multiplicities])
        return cls(sp.coo_matrix((data, (rows, cols)), shape=(n, n)), node_ids=node_ids)

    @classmethod
    def from_dense(cls, matrix):
        """Build a graph from a dense symmetric matrix, taken as ``A`` verbatim.

        Odd diagonal entries are accepted here.
        """
        return cls(sp.csr_matrix(np.asarray(matrix)))

    @property
    def edge_count(self):
        """Number of edges, self-edges included, for an even diagonal."""
        return self.total // 2

    def entries(self):
        """``(rows, cols, values)`` of the stored entries of ``A`` (both triangles)."""
        return self._entries

    def neighbors(self, i):
        """``(indices, multiplicities)`` of row ``i``, diagonal included."""
        start, end = self.adjacency.indptr[i], self.adjacency.indptr[i + 1]
        return self.adjacency.indices[start:end], self.adjacency.data[start:end]

    def to_dense(self):
        return self.adjacency.toarray()

    def subgraph(self, nodes):
        nodes = np.asarray(nodes, dtype=np.int64)
        return Graph(self.adjacency[nodes][:, nodes], node_ids=self.node_ids[nodes])

    def without_self_loops(self):
        adjacency = self.adjacency.tolil()
        adjacency.setdiag(0)
        return Graph(adjacency, node_ids=self.node_ids)

    def __repr__(self):
        return "Graph(n={}, edges={})".format(self.n, self.edge_count)


class Labels(Partition):
    """Ground-truth communities; ``-1`` marks an unlabeled node."""

    allows_unlabeled = True

    def labeled(self):
        return np.flatnonzero(self.assignment >= 0)


_INDEX_RANGE = np.iinfo(np.int64)


def _parse_int(token, path, line_number):
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError("expected an integer, got {!r}".format(token), path, line_number)
    if not _INDEX_RANGE.min < value < _INDEX_RANGE.max:
        raise GraphFormatError("integer {} overflows a 64-bit index".format(token), path, line_number)
    return value


def _read_edge_lines(path):
    """Return the ``# nodes:`` header value (or None) and the ``(line_number, i, j, count)`` records."""
    header = None
    records = []
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                match = _NODES_HEADER.match(line)
                if match:
                    header = int(match.group(1))
                continue
            tokens = line.split()
            if len(tokens) not in (2, 3):
                raise GraphFormatError("expected 'i j [count]', got {!r}".format(line), path, line_number)
            i, j = (_parse_int(t, path, line_number) for t in tokens[:2])
            count = _parse_int(tokens[2], path, line_number) if len(tokens) == 3 else 1
            if count < 0:
                raise GraphFormatError("negative multiplicity {}".format(count), path, line_number)
            records.append((line_number, i, j, count))
    return header, records


def load_edge_list(path, one_indexed=False, treat_as_undirected=True, drop_self_loops=False):
    """Read a whitespace-separated edge list.

    Each line is ``i j`` or ``i j count``; repeated pairs accumulate. With a
    ``# nodes: N`` header the indices are used as-is and must lie in
    ``0..N-1`` (after the one-indexed shift), so isolated trailing nodes are
    kept. Without it the identifiers are densified in increasing order and
    kept in :attr:`Graph.node_ids`.

    With ``treat_as_undirected=False`` lines are arcs and reciprocal arcs are
    merged: ``A[i, j] = max(arcs(i, j), arcs(j, i))``.

    :raises GraphFormatError: on a malformed line or an out-of-range index
    """
    header, records = _read_edge_lines(path)
    shift = 1 if one_indexed else 0
    if records:
        line_numbers, heads, tails, counts = (np.array(column, dtype=np.int64) for column in zip(*records))
    else:
        line_numbers = heads = tails = counts = np.zeros(0, dtype=np.int64)
    heads = heads - shift
    tails = tails - shift

    if header is not None:
        n = header
        bad = (heads < 0) | (tails < 0) | (heads >= n) | (tails >= n)
        if bad.any():
            first = int(np.flatnonzero(bad)[0])
            raise GraphFormatError("node index out of range 0..{}".format(n - 1), path,
                                   int(line_numbers[first]))
        node_ids = np.arange(n, dtype=np.int64) + shift
    else:
        bad = (heads < 0) | (tails < 0)
        if bad.any():
            first = int(np.flatnonzero(bad)[0])
            raise GraphFormatError("negative node index", path, int(line_numbers[first]))
        node_ids, inverse = np.unique(np.concatenate([heads, tails]), return_inverse=True)
        heads, tails = inverse[:heads.size], inverse[heads.size:]
        n = node_ids.size
        node_ids = node_ids + shift

    if drop_self_loops:
        keep = heads != tails
        heads, tails, counts = heads[keep], tails[keep], counts[keep]

    if treat_as_undirected:
        graph = Graph.from_edges(n, np.column_stack([heads, tails]), counts, node_ids=node_ids)
    else:
        loops = heads == tails
        arcs = sp.coo_matrix((counts[~loops], (heads[~loops], tails[~loops])), shape=(n, n)).tocsr()
        arcs.sum_duplicates()
        loop_counts = np.bincount(heads[loops], weights=counts[loops], minlength=n).astype(np.int64)
        adjacency = arcs.maximum(arcs.T) + sp.diags(2 * loop_counts, format="csr")
        graph = Graph(adjacency, node_ids=node_ids)
    log.info("loaded %s from %s", graph, path)
    return graph


def save_edge_list(graph, path):
    """Write ``i j count`` lines (upper triangle) under a ``# nodes: N`` header."""
    if np.any(graph.diagonal % 2):
        raise GraphFormatError("a self-loop entry is odd and has no edge-list form", path)
    upper = sp.triu(graph.adjacency).tocoo()
    with open(path, "w", encoding="utf-8") as f:
        f.write("# nodes: {}\n".format(graph.n))
        for i, j, count in zip(upper.row, upper.col, upper.data):
            if i == j:
                count //= 2
            f.write("{} {} {}\n".format(i, j, count))


def largest_connected_component(graph):
    """Induced subgraph on the largest connected component.

    Ties go to the component holding the smallest node index. Returns the
    subgraph and an array mapping every old index to its new index, ``-1`` for
    dropped nodes.

    :raises EmptyGraphError: if the graph has no node
    """
    if graph.n == 0:
        raise EmptyGraphError("the graph has no node")
    count, labels = connected_components(graph.adjacency, directed=False)
    sizes = np.bincount(labels, minlength=count)
    first = np.full(count, graph.n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(graph.n))
    largest = np.flatnonzero(sizes == sizes.max())
    chosen = largest[np.argmin(first[largest])]
    nodes = np.flatnonzero(labels == chosen)
    mapping = np.full(graph.n, -1, dtype=np.int64)
    mapping[nodes] = np.arange(nodes.size)
    log.info("largest component keeps %d of %d nodes (%d components)", nodes.size, graph.n, count)
    return graph.subgraph(nodes), mapping


def load_labels(path, graph=None, one_indexed=False):
    """Read ``node community`` lines.

    Node identifiers are resolved through ``graph.node_ids`` when a graph is
    given; nodes without a line are unlabeled. Community identifiers are
    renumbered ``0..r-1`` in increasing order.
    """
    nodes, communities = [], []
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise GraphFormatError("expected 'node community', got {!r}".format(line), path, line_number)
            nodes.append(_parse_int(tokens[0], path, line_number))
            communities.append(_parse_int(tokens[1], path, line_number))
    nodes = np.array(nodes, dtype=np.int64)
    if graph is None:
        nodes = nodes - (1 if one_indexed else 0)
        if nodes.size and nodes.min() < 0:
            raise GraphFormatError("negative node index", path)
        n = int(nodes.max()) + 1 if nodes.size else 0
    else:
        n = graph.n
        order = np.argsort(graph.node_ids)
        positions = np.searchsorted(graph.node_ids, nodes, sorter=order)
        positions = np.minimum(positions, max(n - 1, 0))
        if nodes.size and (n == 0 or np.any(graph.node_ids[order[positions]] != nodes)):
            raise GraphFormatError("labels name nodes that are not in the graph", path)
        nodes = order[positions]
    assignment = np.full(n, -1, dtype=np.int64)
    uniques, dense = np.unique(np.array(communities, dtype=np.int64), return_inverse=True)
    assignment[nodes] = dense
    return Labels(assignment, r=max(uniques.size, 1))


def save_labels(labels, path, node_ids=None):
    """Write ``node community`` lines, skipping unlabeled nodes."""
    ids = np.arange(labels.n) if node_ids is None else np.asarray(node_ids)
    with open(path, "w", encoding="utf-8") as f:
        for node, community in zip(ids, labels.assignment):
            if community >= 0:
                f.write("{} {}\n".format(node, community))
