# -*- coding: utf-8 -*-
"""Small graphs shipped with the package.

* ``karate``: Zachary's karate club with the two factions after the split.
* ``southern_women``: Davis's women/events attendance graph, labeled by node type.
* ``example1``: two 2-cliques and an isolated node, each node with a unit
  diagonal entry; the diagonal is odd, so there is no edge-list form.
"""
import collections
import os

import numpy as np

from ..graph import Graph, Labels, load_edge_list, load_labels

__all__ = ["Dataset", "NAMES", "load", "example1_graph", "BUILTIN_PREFIX", "is_builtin"]

Dataset = collections.namedtuple("Dataset", "name graph labels")

NAMES = ("karate", "southern_women", "example1")
BUILTIN_PREFIX = "builtin:"

_HERE = os.path.dirname(os.path.abspath(__file__))

EXAMPLE1 = [
    [1, 1, 0, 0, 0],
    [1, 1, 0, 0, 0],
    [0, 0, 1, 1, 0],
    [0, 0, 1, 1, 0],
    [0, 0, 0, 0, 1],
]


def example1_graph():
    return Graph.from_dense(np.array(EXAMPLE1))


def is_builtin(path):
    return path.startswith(BUILTIN_PREFIX)


def load(name):
    """Load a bundled dataset by name, with or without the ``builtin:`` prefix."""
    if is_builtin(name):
        name = name[len(BUILTIN_PREFIX):]
    if name not in NAMES:
        raise KeyError("unknown dataset {!r}, expected one of {}".format(name, ", ".join(NAMES)))
    if name == "example1":
        return Dataset(name, example1_graph(), Labels([0, 0, 1, 1, -1], r=2))
    graph = load_edge_list(os.path.join(_HERE, name + ".edges"))
    labels = load_labels(os.path.join(_HERE, name + ".labels"), graph=graph)
    return Dataset(name, graph, labels)
