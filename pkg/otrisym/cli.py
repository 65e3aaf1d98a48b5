# -*- coding: utf-8 -*-
"""Command-line interface: ``otrisym {detect,eval,gen,bench,lcc}``."""
import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import datasets
from .bench import detect, bench_scaling
from .config import FrostConfig
from .errors import GraphFormatError, DimensionError, NumericalError, EmptyGraphError
from .generator import PlantedSpec, generate, write_spec
from .graph import load_edge_list, load_labels, save_edge_list, save_labels, largest_connected_component
from .metrics import nmi, ami_max
from .validation import ValidationError

__all__ = ["build_parser", "main"]

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

METHODS = ("frost", "kn", "klem", "svca")
INITS = ("svca", "random")


def _add_graph_arguments(parser, labels=True):
    parser.add_argument("--graph", required=True,
                        help="edge list path, or builtin:{}".format("|".join(datasets.NAMES)))
    if labels:
        parser.add_argument("--labels", help="ground-truth 'node community' file")
    parser.add_argument("--one-indexed", action="store_true", help="node ids in the files start at 1")
    parser.add_argument("--directed", action="store_true",
                        help="read lines as arcs and merge reciprocal arcs")
    parser.add_argument("--drop-self-loops", action="store_true")


def _add_frost_arguments(parser):
    parser.add_argument("--max-iter", type=int, default=500, help="FROST outer iterations")
    parser.add_argument("--rel-tol", type=float, default=1e-6, help="FROST relative stopping tolerance")


def build_parser():
    parser = argparse.ArgumentParser(prog="otrisym",
                                     description="Community detection with the degree-corrected block model.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("-q", "--quiet", action="store_true")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    p = commands.add_parser("detect", help="best of several seeded runs")
    _add_graph_arguments(p)
    _add_frost_arguments(p)
    p.add_argument("-r", type=int, required=True, help="number of communities")
    p.add_argument("--method", choices=METHODS, default="frost")
    p.add_argument("--init", choices=INITS, default="svca")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="seed of run 0; run k uses seed + k")
    p.add_argument("--svca-p", type=int, help="columns averaged per SVCA centroid")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="out", help="output directory")
    p.set_defaults(handler=_detect)

    p = commands.add_parser("eval", help="NMI and AMI of a partition against ground truth")
    p.add_argument("partition", help="'node community' file to score")
    p.add_argument("--labels", required=True, help="ground-truth 'node community' file")
    p.add_argument("--graph", help="graph whose node ids the label files use")
    p.add_argument("--one-indexed", action="store_true")
    p.set_defaults(handler=_eval)

    p = commands.add_parser("gen", help="sample a planted-partition graph")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--mu", type=float, default=0.1)
    p.add_argument("--average-degree", type=float, default=20.0)
    p.add_argument("--propensity", choices=("uniform", "power_law"), default="uniform")
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--min-degree", type=int, default=1)
    p.add_argument("--max-degree", type=int, default=50)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="planted", help="output path prefix")
    p.set_defaults(handler=_gen)

    p = commands.add_parser("bench", help="runtime and AMI on planted graphs of growing size")
    p.add_argument("--sizes", type=int, nargs="+", default=[1000, 2000, 4000])
    p.add_argument("-r", type=int, help="communities per graph, default round(sqrt(n))")
    p.add_argument("--mu", type=float, default=0.1)
    p.add_argument("--average-degree", type=float, default=20.0)
    p.add_argument("--method", dest="methods", choices=METHODS, nargs="*", default=["frost"])
    p.add_argument("--init", dest="inits", choices=INITS, nargs="+", default=["svca"])
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout-s", type=float, help="per-run wall-clock limit in seconds")
    _add_frost_arguments(p)
    p.add_argument("--out", default="scaling.csv", help="output CSV")
    p.set_defaults(handler=_bench)

    p = commands.add_parser("lcc", help="extract the largest connected component")
    _add_graph_arguments(p, labels=False)
    p.add_argument("--out", required=True, help="output path prefix")
    p.set_defaults(handler=_lcc)
    return parser


def _load_graph(args):
    """``(name, graph, labels)``; labels come from ``--labels`` or the bundled dataset."""
    labels = None
    if datasets.is_builtin(args.graph):
        dataset = datasets.load(args.graph)
        name, graph, labels = dataset.name, dataset.graph, dataset.labels
        if args.drop_self_loops:
            graph = graph.without_self_loops()
    else:
        name = os.path.splitext(os.path.basename(args.graph))[0]
        graph = load_edge_list(args.graph, one_indexed=args.one_indexed,
                               treat_as_undirected=not args.directed,
                               drop_self_loops=args.drop_self_loops)
    if getattr(args, "labels", None):
        labels = load_labels(args.labels, graph=graph)
    return name, graph, labels


def _dump(payload):
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _detect(args):
    name, graph, labels = _load_graph(args)
    frost_config = FrostConfig(max_outer_iterations=args.max_iter, rel_tol=args.rel_tol)
    result = detect(graph, args.r, method=args.method, init=args.init, runs=args.runs,
                    base_seed=args.seed, out_dir=args.out, labels=labels, workers=args.workers,
                    graph_name=name, frost_config=frost_config, svca_p=args.svca_p)
    payload = result.best.as_dict()
    payload["success_rate"] = result.success_rate
    _dump(payload)


def _eval(args):
    graph = None
    if args.graph:
        graph = (datasets.load(args.graph).graph if datasets.is_builtin(args.graph)
                 else load_edge_list(args.graph, one_indexed=args.one_indexed))
    predicted = load_labels(args.partition, graph=graph, one_indexed=args.one_indexed)
    truth = load_labels(args.labels, graph=graph, one_indexed=args.one_indexed)
    n = max(predicted.n, truth.n)
    predicted, truth = (np.pad(labels.assignment, (0, n - labels.n), constant_values=-1)
                        for labels in (predicted, truth))
    _dump({"nmi": nmi(predicted, truth), "ami": ami_max(predicted, truth)})


def _gen(args):
    spec = PlantedSpec(n=args.n, r=args.r, mu=args.mu, average_degree=args.average_degree,
                       propensity=args.propensity, gamma=args.gamma, min_degree=args.min_degree,
                       max_degree=args.max_degree, seed=args.seed)
    graph, partition = generate(spec)
    save_edge_list(graph, args.out + ".edges")
    save_labels(partition, args.out + ".labels")
    write_spec(spec, args.out + ".json")
    log.info("wrote %s.edges, %s.labels and %s.json", args.out, args.out, args.out)


def _bench(args):
    specs = [PlantedSpec(n=n, r=args.r or max(1, int(round(math.sqrt(n)))), mu=args.mu,
                         average_degree=args.average_degree,
                         seed=None if args.seed is None else args.seed + index)
             for index, n in enumerate(args.sizes)]
    frost_config = FrostConfig(max_outer_iterations=args.max_iter, rel_tol=args.rel_tol)
    rows = bench_scaling(specs, args.methods, args.out, inits=args.inits, runs=args.runs,
                         timeout_s=args.timeout_s, base_seed=args.seed, frost_config=frost_config)
    log.info("wrote %d rows to %s", len(rows), args.out)


def _lcc(args):
    _, graph, _ = _load_graph(args)
    component, mapping = largest_connected_component(graph)
    save_edge_list(component, args.out + ".edges")
    with open(args.out + ".map", "w", encoding="utf-8") as f:
        f.write("# new original\n")
        for new, original in enumerate(component.node_ids):
            f.write("{} {}\n".format(new, original))
    log.info("largest component: %d of %d nodes", component.n, graph.n)


def _configure_logging(args):
    level = logging.WARNING - 10 * args.verbose
    if args.quiet:
        level = logging.ERROR
    logging.basicConfig(level=max(level, logging.DEBUG),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    try:
        args.handler(args)
    except (ValidationError, GraphFormatError, DimensionError, EmptyGraphError, KeyError) as e:
        log.error("%s", e)
        return EXIT_USAGE
    except NumericalError as e:
        log.error("numerical failure: %s", e)
        return EXIT_NUMERICAL
    except (IOError, OSError) as e:
        log.error("%s", e)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
