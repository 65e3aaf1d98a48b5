# -*- coding: utf-8 -*-
"""Multi-run community detection and scaling measurements.

Each run is an independent pipeline seeded with ``base_seed + run``; the best
run minimizes the Frobenius error (``frost``, ``svca``) or maximizes the
log-likelihood (``kn``, ``klem``).
"""
import collections
import concurrent.futures
import csv
import json
import logging
import os
import time

import numpy as np

from .config import FrostConfig, SvcaConfig
from .dcbm import kn_infer, klem_infer
from .frost import frost_solve
from .generator import generate
from .graph import save_labels
from .metrics import nmi, ami_max
from .model import frobenius_error, random_partition, factors_from_partition, to_partition
from .svca import svca_init
from .validation import Nullable
from .validation.contexts import config_context
from .validation.extras import accepts

__all__ = ["RunResult", "DetectResult", "OBJECTIVE_KINDS", "is_better", "run_once", "detect",
           "bench_scaling", "SCALING_COLUMNS"]

log = logging.getLogger(__name__)

OBJECTIVE_KINDS = {
    "frost": "frobenius",
    "svca": "frobenius",
    "kn": "log_likelihood",
    "klem": "log_likelihood",
}

SUCCESS_TOL = 1e-9

SUMMARY_COLUMNS = ("method", "init", "runs", "best_run", "best_objective", "objective_kind",
                   "success_rate", "mean_runtime_seconds", "best_nmi", "best_ami", "mean_nmi", "mean_ami")

SCALING_COLUMNS = ("n", "edges", "method", "init", "runs", "mean_runtime", "mean_ami",
                   "mean_iterations", "runtime_per_iteration", "timed_out")

DetectResult = collections.namedtuple("DetectResult", "best runs success_rate")


class RunResult(object):
    """Outcome of one seeded run."""

    fields = ("method", "init", "seed", "run", "objective", "objective_kind", "partition_path",
              "runtime_seconds", "solve_seconds", "iterations", "nmi", "ami")

    def __init__(self, method, init, seed, run, objective, runtime_seconds, iterations,
                 partition_path=None, nmi=None, ami=None, solve_seconds=None):
        self.method = method
        self.init = init
        self.seed = seed
        self.run = run
        self.objective = objective
        self.objective_kind = OBJECTIVE_KINDS[method]
        self.partition_path = partition_path
        self.runtime_seconds = runtime_seconds
        self.solve_seconds = solve_seconds
        self.iterations = iterations
        self.nmi = nmi
        self.ami = ami

    def as_dict(self):
        return {name: getattr(self, name) for name in self.fields}

    def __repr__(self):
        return "RunResult(method={!r}, init={!r}, run={}, objective={!r})".format(
            self.method, self.init, self.run, self.objective)


def is_better(kind, candidate, incumbent):
    if kind == "frobenius":
        return candidate < incumbent
    return candidate > incumbent


def _same_objective(candidate, best):
    return abs(candidate - best) <= SUCCESS_TOL * max(1.0, abs(best))


def run_once(graph, r, method, init, seed=None, labels=None, frost_config=None, svca_p=None, run=0):
    """One seeded detection run.

    :return: ``(RunResult, Partition)``
    """
    started = time.perf_counter()
    svca_config = SvcaConfig(p=svca_p, seed=seed)
    if method == "svca" or init == "svca":
        z, theta, partition = svca_init(graph, r, svca_config)
    else:
        partition = random_partition(graph.n, r, seed)
        z, theta = factors_from_partition(graph, partition)

    solving = time.perf_counter()
    if method == "frost":
        config = (frost_config or FrostConfig()).replace(seed=seed)
        z, theta, trace = frost_solve(graph, (z, theta), config)
        objective = trace[-1].frobenius_error
        iterations = len(trace)
        partition = to_partition(z, "random", seed)
    elif method == "svca":
        objective = frobenius_error(graph, z, theta)
        iterations = 0
    else:
        infer = kn_infer if method == "kn" else klem_infer
        partition, objective, iterations = infer(graph, r, partition, seed)
    finished = time.perf_counter()
    runtime = finished - started

    result = RunResult(method, init if method != "svca" else "svca", seed, run, float(objective),
                       runtime, iterations, solve_seconds=finished - solving)
    if labels is not None:
        result.nmi = nmi(partition, labels)
        result.ami = ami_max(partition, labels)
    log.info("run %d (%s-%s, seed %s): %s %.12g in %.3fs", run, method, result.init, seed,
             result.objective_kind, result.objective, runtime)
    return result, partition


def _run_job(job):
    return run_once(**job)


def _run_seed(base_seed, run):
    return None if base_seed is None else base_seed + run


@accepts(config_context, r="count", method="method", init="init", runs="count", base_seed="seed",
         workers="count")
def detect(graph, r, method="frost", init="svca", runs=10, base_seed=0, out_dir=None, labels=None,
           workers=1, graph_name="graph", frost_config=None, svca_p=None):
    """Run ``runs`` independent detections and keep the best.

    With ``out_dir`` every run is written to
    ``{out_dir}/{graph_name}/{method}-{init}/run-{k}.json`` with its partition
    in ``run-{k}.labels``; the best partition goes to ``best.labels``, all
    records to ``runs.jsonl`` and an aggregate line to ``summary.csv``.
    Runs are dispatched to ``workers`` processes; results keep run order.

    :return: :class:`DetectResult` ``(best, runs, success_rate)``
    """
    if method == "svca":
        init = "svca"
    jobs = [dict(graph=graph, r=r, method=method, init=init, seed=_run_seed(base_seed, run),
                 labels=labels, frost_config=frost_config, svca_p=svca_p, run=run)
            for run in range(runs)]
    if workers > 1 and runs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_job, jobs))
    else:
        outcomes = [_run_job(job) for job in jobs]

    results = [result for result, _ in outcomes]
    best_index = 0
    for index, result in enumerate(results):
        if is_better(result.objective_kind, result.objective, results[best_index].objective):
            best_index = index
    best = results[best_index]
    success_rate = sum(_same_objective(result.objective, best.objective) for result in results) / float(runs)

    if out_dir is not None:
        _write_detection(os.path.join(out_dir, graph_name, "{}-{}".format(method, init)),
                         graph, outcomes, best_index, success_rate)
    log.info("%s-%s best of %d runs: run %d with %s %.12g (success rate %.2f)", method, init, runs,
             best.run, best.objective_kind, best.objective, success_rate)
    return DetectResult(best, results, success_rate)


def _mean(values):
    values = [value for value in values if value is not None]
    return float(np.mean(values)) if values else None


def _write_detection(directory, graph, outcomes, best_index, success_rate):
    os.makedirs(directory, exist_ok=True)
    for result, partition in outcomes:
        result.partition_path = os.path.join(directory, "run-{}.labels".format(result.run))
        save_labels(partition, result.partition_path, graph.node_ids)
        with open(os.path.join(directory, "run-{}.json".format(result.run)), "w") as f:
            json.dump(result.as_dict(), f, indent=2, sort_keys=True)
    save_labels(outcomes[best_index][1], os.path.join(directory, "best.labels"), graph.node_ids)

    results = [result for result, _ in outcomes]
    with open(os.path.join(directory, "runs.jsonl"), "w") as f:
        for result in results:
            f.write(json.dumps(result.as_dict(), sort_keys=True) + "\n")
    best = results[best_index]
    with open(os.path.join(directory, "summary.csv"), "w", newline="") as f:
        writer = csv.DictWriter(f, SUMMARY_COLUMNS)
        writer.writeheader()
        writer.writerow({
            "method": best.method,
            "init": best.init,
            "runs": len(results),
            "best_run": best.run,
            "best_objective": repr(best.objective),
            "objective_kind": best.objective_kind,
            "success_rate": success_rate,
            "mean_runtime_seconds": _mean(result.runtime_seconds for result in results),
            "best_nmi": best.nmi,
            "best_ami": best.ami,
            "mean_nmi": _mean(result.nmi for result in results),
            "mean_ami": _mean(result.ami for result in results),
        })


@accepts(config_context, runs="count", timeout_s=Nullable("number"), base_seed="seed")
def bench_scaling(specs, methods, out_csv, inits=("svca",), runs=1, timeout_s=None, base_seed=0,
                  frost_config=None):
    """Runtime and accuracy of every method on graphs of growing size.

    ``specs`` are :class:`~otrisym.generator.PlantedSpec` instances, run in
    increasing ``n``. A method/init pair with a run slower than ``timeout_s``
    is marked timed out for that size and skipped for every larger one;
    ``timeout_s <= 0`` marks every row timed out without running anything.

    :return: the rows written to ``out_csv``
    """
    pairs = [(method, init) for method in methods for init in inits]
    timed_out = set()
    rows = []
    for spec in sorted(specs, key=lambda spec: spec.n):
        if not pairs:
            break
        graph, truth = generate(spec)
        for method, init in pairs:
            row = dict.fromkeys(SCALING_COLUMNS)
            row.update(n=spec.n, edges=graph.edge_count, method=method, init=init, runs=runs,
                       timed_out=True)
            if (method, init) in timed_out or (timeout_s is not None and timeout_s <= 0):
                rows.append(row)
                continue
            results = [run_once(graph, spec.r, method, init, _run_seed(base_seed, run), truth,
                                frost_config, run=run)[0]
                       for run in range(runs)]
            runtimes = [result.runtime_seconds for result in results]
            iterations = sum(result.iterations for result in results)
            solving = sum(result.solve_seconds for result in results)
            row.update(mean_runtime=float(np.mean(runtimes)),
                       mean_ami=_mean(result.ami for result in results),
                       mean_iterations=iterations / float(runs),
                       runtime_per_iteration=solving / iterations if iterations else None,
                       timed_out=timeout_s is not None and max(runtimes) > timeout_s)
            if row["timed_out"]:
                timed_out.add((method, init))
                log.warning("%s-%s exceeded %.3gs at n=%d; larger sizes are skipped", method, init,
                            timeout_s, spec.n)
            rows.append(row)

    with open(out_csv, "w", newline="") as f:
        writer = csv.DictWriter(f, SCALING_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    return rows
