#!/usr/bin/env python3
"""Show how tighter lower bounds prune more DTW computations in 1-NN search.

Builds a synthetic dataset of random-walk series, then runs the same
nearest-neighbor queries under each bound selector and both search protocols,
counting how many full DTW computations each configuration needed. Every
configuration returns identical neighbors — the bounds change only the work.

Usage: python3 demos/pruning_demo.py
"""

import numpy as np

from dtw_bounds import SQUARED, Window, as_series
from dtw_bounds.bench import synthetic_walk_pair
from dtw_bounds.search import (
    BoundSelector,
    CandidateIndex,
    search_random_order,
    search_sorted,
)

N_CANDIDATES = 60
N_QUERIES = 20
LENGTH = 48
WINDOW = Window(5)

SELECTORS = (
    None,
    BoundSelector("keogh"),
    BoundSelector("improved"),
    BoundSelector("enhanced", k=3),
    BoundSelector("webb"),
    BoundSelector("petitjean"),
)


def build_data(seed: int = 2024):
    rng = np.random.default_rng(seed)
    base, _ = synthetic_walk_pair(rng, LENGTH)
    candidates = []
    for _ in range(N_CANDIDATES):
        drift = rng.normal(0, 1.5, LENGTH).cumsum() * 0.3
        candidates.append(as_series(np.asarray(base.values) + drift + rng.normal(0, 2)))
    queries = []
    for _ in range(N_QUERIES):
        drift = rng.normal(0, 1.5, LENGTH).cumsum() * 0.3
        queries.append(as_series(np.asarray(base.values) + drift + rng.normal(0, 2)))
    return queries, candidates


def label(selector) -> str:
    return selector.label() if selector is not None else "(no bound)"


def main() -> None:
    queries, candidates = build_data()
    index = CandidateIndex.build(candidates, WINDOW)
    print(f"{N_QUERIES} queries against {N_CANDIDATES} candidates "
          f"(length {LENGTH}, window {WINDOW.w})\n")

    baseline = None
    print(f"  {'bound':<14} {'protocol':<8} {'dtw calls':>9}  {'abandoned':>9}")
    for selector in SELECTORS:
        protocols = ("random",) if selector is None else ("random", "sorted")
        for protocol in protocols:
            calls = 0
            abandoned = 0
            neighbors = []
            for qid, q in enumerate(queries):
                if protocol == "random":
                    report = search_random_order(q, index, WINDOW, SQUARED,
                                                 selector, rng_seed=qid)
                else:
                    report = search_sorted(q, index, WINDOW, SQUARED, selector)
                calls += report.dtw_calls
                abandoned += report.bounds_abandoned
                neighbors.append((report.nn_index, round(report.nn_distance, 9)))
            if baseline is None:
                baseline = neighbors
            assert neighbors == baseline, "bounds must never change the answer"
            print(f"  {label(selector):<14} {protocol:<8} {calls:>9}  {abandoned:>9}")
    print()
    print("Every configuration found identical nearest neighbors; tighter")
    print("bounds and the sorted protocol simply discard more candidates")
    print("before a full DTW computation is needed.")


if __name__ == "__main__":
    main()
