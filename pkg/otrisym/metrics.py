# -*- coding: utf-8 -*-
"""Partition similarity: NMI and chance-adjusted AMI (max normalization)."""
import numpy as np
from sklearn.metrics import adjusted_mutual_info_score, mutual_info_score, normalized_mutual_info_score
from sklearn.metrics.cluster import contingency_matrix

from .model import Partition

__all__ = ["Contingency", "contingency", "nmi", "ami_max"]


class Contingency(object):
    """Counts ``n_uv`` of nodes in community ``u`` of one partition and ``v`` of the other."""

    def __init__(self, counts):
        self.counts = np.asarray(counts, dtype=np.int64)
        self.rows = self.counts.sum(axis=1)
        self.cols = self.counts.sum(axis=0)
        self.total = int(self.counts.sum())

    def mutual_info(self):
        return float(mutual_info_score(None, None, contingency=self.counts))

    def is_matching(self):
        """True if the partitions agree up to a relabeling."""
        nonzero = self.counts > 0
        return bool(np.all(nonzero.sum(axis=0) == 1) and np.all(nonzero.sum(axis=1) == 1))


def _labels(partition):
    return partition.assignment if isinstance(partition, Partition) else np.asarray(partition)


def _labeled_pair(a, b):
    a, b = _labels(a), _labels(b)
    if a.shape != b.shape:
        raise ValueError("partitions cover {} and {} nodes".format(a.size, b.size))
    both = (a >= 0) & (b >= 0)
    if not both.any():
        raise ValueError("no node is labeled in both partitions")
    return a[both], b[both]


def contingency(a, b):
    """Contingency table over nodes labeled in both partitions (``-1`` is unlabeled)."""
    return Contingency(contingency_matrix(*_labeled_pair(a, b)))


def nmi(a, b):
    """``MI / max(H(a), H(b))``; two single-community partitions score ``1``."""
    return float(normalized_mutual_info_score(*_labeled_pair(a, b), average_method="max"))


def ami_max(a, b):
    """``(MI - E[MI]) / (max(H(a), H(b)) - E[MI])``.

    ``E[MI]`` is the exact expectation under random permutations with the
    community sizes fixed. Two single-community partitions score ``1``.
    """
    return float(adjusted_mutual_info_score(*_labeled_pair(a, b), average_method="max"))
