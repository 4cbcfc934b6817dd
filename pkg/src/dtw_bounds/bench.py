"""Benchmark drivers: tightness evaluation, NN-search experiments, selftest.

Tightness of a bound on a dataset is the mean over all (test, train) pairs
of bound / DTW, excluding pairs whose DTW is zero. Search experiments time
repeated 1-NN sweeps of the test set against the training set and report
work counters plus 1-NN classification accuracy as a sanity column.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    ABSOLUTE,
    SQUARED,
    CostFunction,
    TimeSeries,
    Window,
    WindowZeroRejected,
)
from .dtw import dtw
from .envelopes import compute_envelopes, derived_envelopes
from .search import (
    BoundSelector,
    CandidateIndex,
    SearchReport,
    evaluate_bound,
    search_random_order,
    search_sorted,
)
from .ucr import Dataset, WindowSpec, load_dataset, resolve_window

CSV_HEADER_COMMENT = "# dtw-bounds v1"


@dataclass
class RunConfig:
    """Configuration shared by the tightness and search drivers."""

    train_path: str
    test_path: str
    window: WindowSpec
    cost: CostFunction = SQUARED
    selectors: tuple[BoundSelector, ...] = ()
    protocol: str = "random"
    reps: int = 10
    seed: int = 0
    znorm: bool = False
    out: str | None = None
    parallel: bool = False
    dataset_name: str | None = None


@dataclass(frozen=True)
class TightnessRecord:
    dataset: str
    bound_kind: str
    w: int
    mean_tightness: float
    pairs_counted: int
    pairs_excluded_zero_dtw: int


@dataclass(frozen=True)
class SearchSummary:
    dataset: str
    bound: str
    protocol: str
    mean_time_s: float
    sd_time_s: float
    dtw_calls: float
    abandons: float
    accuracy: float


def _load(cfg: RunConfig) -> Dataset:
    return load_dataset(
        cfg.train_path, cfg.test_path, name=cfg.dataset_name, znorm=cfg.znorm
    )


def _tightness_for_query(args):
    """Per-query tightness sums; module-level so process pools can pickle it."""
    q, entries, w, cf, selectors = args
    q_env = compute_envelopes(q, w)
    q_denv = derived_envelopes(q_env)
    sums = [0.0] * len(selectors)
    counted = 0
    excluded = 0
    for entry in entries:
        ref = dtw(q, entry.series, w, cf).distance
        if ref == 0.0:
            excluded += 1
            continue
        counted += 1
        for si, sel in enumerate(selectors):
            if sel.kind == "dtw":
                sums[si] += 1.0
            else:
                br = evaluate_bound(sel, q, q_env, q_denv, entry, w, cf, None)
                sums[si] += br.value / ref
    return sums, counted, excluded


def run_tightness(cfg: RunConfig) -> list[TightnessRecord]:
    """Mean bound/DTW ratio per selector over every (test, train) pair.

    Bounds run without a cutoff (no abandoning: the ratio needs the full
    value). Pairs with DTW = 0 are excluded from the mean. The window must
    resolve to at least 1: at w = 0 DTW degenerates to a lockstep distance
    and the ratios say nothing about warping bounds.
    """
    ds = _load(cfg)
    w = resolve_window(cfg.window, ds.series_length)
    if w.w < 1:
        raise WindowZeroRejected(
            "tightness evaluation needs a window of at least 1"
        )
    if not cfg.selectors:
        raise ValueError("tightness needs at least one bound selector")
    for sel in cfg.selectors:
        if sel.kind == "none":
            raise ValueError("the none selector has no tightness")
    index = CandidateIndex.build([r.series for r in ds.train], w)
    jobs = [
        (r.series, index.entries, w, cfg.cost, cfg.selectors) for r in ds.test
    ]
    if cfg.parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_tightness_for_query, jobs))
    else:
        results = [_tightness_for_query(j) for j in jobs]
    totals = [0.0] * len(cfg.selectors)
    counted = 0
    excluded = 0
    for sums, c, e in results:
        for i, s in enumerate(sums):
            totals[i] += s
        counted += c
        excluded += e
    records = []
    for i, sel in enumerate(cfg.selectors):
        mean = totals[i] / counted if counted else float("nan")
        records.append(
            TightnessRecord(
                dataset=ds.name,
                bound_kind=sel.label(),
                w=w.w,
                mean_tightness=mean,
                pairs_counted=counted,
                pairs_excluded_zero_dtw=excluded,
            )
        )
    return records


def run_search_experiment(cfg: RunConfig) -> list[SearchSummary]:
    """Timed 1-NN sweeps of the test set, per selector.

    Each repetition sweeps every query once. Per-(repetition, query) RNG
    streams are spawned from the master seed so random-order runs are
    reproducible regardless of execution order. dtw_calls and abandons are
    summed over queries and averaged over repetitions; accuracy is the
    1-NN label match rate (identical for every sound selector).
    """
    ds = _load(cfg)
    w = resolve_window(cfg.window, ds.series_length)
    if cfg.protocol not in ("random", "sorted"):
        raise ValueError(f"unknown protocol {cfg.protocol!r}")
    if cfg.reps < 1:
        raise ValueError("reps must be >= 1")
    if not cfg.selectors:
        raise ValueError("search needs at least one selector")
    index = CandidateIndex.build([r.series for r in ds.train], w)
    train_labels = [r.label for r in ds.train]
    summaries = []
    for sel in cfg.selectors:
        times = []
        calls = []
        abandons = []
        accuracy = None
        for rep in range(cfg.reps):
            rep_calls = 0
            rep_abandons = 0
            rep_reports: list[SearchReport] = []
            t0 = time.perf_counter()
            for qidx, row in enumerate(ds.test):
                if cfg.protocol == "random":
                    seed = np.random.SeedSequence(
                        cfg.seed, spawn_key=(rep, qidx)
                    )
                    report = search_random_order(
                        row.series, index, w, cfg.cost,
                        None if sel.kind == "none" else sel, seed,
                    )
                else:
                    report = search_sorted(row.series, index, w, cfg.cost, sel)
                rep_reports.append(report)
                rep_calls += report.dtw_calls
                rep_abandons += report.bounds_abandoned
            times.append(time.perf_counter() - t0)
            calls.append(rep_calls)
            abandons.append(rep_abandons)
            if accuracy is None:
                hits = sum(
                    1
                    for row, rep_r in zip(ds.test, rep_reports)
                    if train_labels[rep_r.nn_index] == row.label
                )
                accuracy = hits / len(ds.test)
        mean_t = sum(times) / len(times)
        sd_t = (
            math.sqrt(sum((t - mean_t) ** 2 for t in times) / (len(times) - 1))
            if len(times) > 1
            else 0.0
        )
        summaries.append(
            SearchSummary(
                dataset=ds.name,
                bound=sel.label(),
                protocol=cfg.protocol,
                mean_time_s=mean_t,
                sd_time_s=sd_t,
                dtw_calls=sum(calls) / len(calls),
                abandons=sum(abandons) / len(abandons),
                accuracy=accuracy,
            )
        )
    return summaries


def write_tightness_csv(records: list[TightnessRecord], fh) -> None:
    fh.write(CSV_HEADER_COMMENT + "\n")
    writer = csv.writer(fh)
    writer.writerow(
        ["dataset", "bound", "w", "mean_tightness", "pairs_counted",
         "pairs_excluded_zero_dtw"]
    )
    for r in records:
        writer.writerow(
            [r.dataset, r.bound_kind, r.w, repr(r.mean_tightness),
             r.pairs_counted, r.pairs_excluded_zero_dtw]
        )


def write_search_csv(rows: list[SearchSummary], fh) -> None:
    fh.write(CSV_HEADER_COMMENT + "\n")
    writer = csv.writer(fh)
    writer.writerow(
        ["dataset", "bound", "protocol", "mean_time_s", "sd_time_s",
         "dtw_calls", "abandons", "accuracy"]
    )
    for r in rows:
        writer.writerow(
            [r.dataset, r.bound, r.protocol, repr(r.mean_time_s),
             repr(r.sd_time_s), repr(r.dtw_calls), repr(r.abandons),
             repr(r.accuracy)]
        )


def synthetic_walk_pair(rng: np.random.Generator, length: int) -> tuple[TimeSeries, TimeSeries]:
    """A pair of random-walk series with varied scale, offset, and roughness.

    Occasionally quantised to integers so exact ties between values, and
    between values and envelope edges, are exercised.
    """
    out = []
    for _ in range(2):
        scale = float(rng.choice([0.25, 1.0, 4.0]))
        steps = rng.standard_normal(length) * scale
        walk = np.cumsum(steps) + rng.normal(0.0, 2.0)
        if rng.random() < 0.3:
            walk = np.round(walk)
        out.append(TimeSeries([float(v) for v in walk]))
    return out[0], out[1]


def run_selftest(instances: int = 2000, seed: int = 13) -> tuple[int, list[str]]:
    """Soundness and ordering spot-checks on synthetic data.

    For each random instance: every applicable bound must be <= DTW; the
    banded bound at k = 0 must equal the plain envelope bound; the
    two-pass envelope bound must dominate the one-pass one; the
    projection-refined bound without end-path terms must dominate the
    two-pass envelope bound; the banded freeness-refined bound must
    dominate the plain banded bound at the same k; and the starred bound
    must agree with the subtraction form under the absolute-difference
    cost at 1e-9 relative. Returns the number of instances checked and a
    list of violation descriptions (empty = pass).
    """
    from .envelope_bounds import lb_enhanced, lb_improved, lb_keogh
    from .tight_bounds import (
        lb_petitjean,
        lb_petitjean_nolr,
        lb_webb,
        lb_webb_enhanced,
        lb_webb_nolr,
        lb_webb_star,
    )

    rng = np.random.default_rng(seed)
    violations: list[str] = []
    checked = 0
    for case in range(instances):
        length = int(rng.integers(7, 65))
        ww = int(rng.integers(1, length + 1))
        cf = SQUARED if case % 2 == 0 else ABSOLUTE
        a, b = synthetic_walk_pair(rng, length)
        w = Window(ww)
        env_a = compute_envelopes(a, w)
        env_b = compute_envelopes(b, w)
        denv_a = derived_envelopes(env_a)
        denv_b = derived_envelopes(env_b)
        ref = dtw(a, b, w, cf).distance
        tol = 1e-9 * max(1.0, abs(ref))
        values = {
            "keogh": lb_keogh(a, env_b, cf).value,
            "improved": lb_improved(a, b, env_b, w, cf).value,
            "enhanced(0)": lb_enhanced(a, b, env_b, w, 0, cf).value,
            "enhanced(3)": lb_enhanced(a, b, env_b, w, 3, cf).value,
            "petitjean": lb_petitjean(a, b, env_a, env_b, w, cf).value,
            "petitjean_nolr": lb_petitjean_nolr(a, b, env_a, env_b, w, cf).value,
            "webb": lb_webb(a, b, env_a, env_b, denv_a, denv_b, w, cf).value,
            "webb_nolr": lb_webb_nolr(a, b, env_a, env_b, denv_a, denv_b, w, cf).value,
            "webb_star": lb_webb_star(a, b, env_a, env_b, denv_a, denv_b, w, cf).value,
            "webb_enhanced(3)": lb_webb_enhanced(
                a, b, env_a, env_b, denv_a, denv_b, w, 3, cf
            ).value,
        }
        for name, v in values.items():
            if v > ref + tol:
                violations.append(
                    f"instance {case}: {name} = {v!r} exceeds dtw = {ref!r}"
                )
        def rel_lt(x: float, y: float) -> bool:
            return x < y - 1e-9 * max(1.0, abs(x), abs(y))

        if values["enhanced(0)"] != values["keogh"]:
            violations.append(f"instance {case}: enhanced(0) != keogh")
        if rel_lt(values["improved"], values["keogh"]):
            violations.append(f"instance {case}: improved below keogh")
        if rel_lt(values["petitjean_nolr"], values["improved"]):
            violations.append(f"instance {case}: petitjean_nolr below improved")
        if rel_lt(values["webb_enhanced(3)"], values["enhanced(3)"]):
            violations.append(f"instance {case}: webb_enhanced(3) below enhanced(3)")
        if cf is ABSOLUTE:
            diff = abs(values["webb_star"] - values["webb"])
            if diff > 1e-9 * max(1.0, abs(values["webb"])):
                violations.append(f"instance {case}: webb_star != webb under abs")
        checked += 1
    return checked, violations
