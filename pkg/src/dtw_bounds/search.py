"""Nearest-neighbour search harnesses driven by DTW lower bounds.

Two protocols: random-order (bounds computed with the incumbent distance as
cutoff, DTW only when the bound comes in under it) and sorted (all bounds
first, then DTW in ascending bound order until the next bound cannot beat
the incumbent). Candidate envelopes are precomputed once per training set.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .core import CostFunction, EmptyTrainingSet, TimeSeries, Window
from .dtw import dtw, dtw_early_abandon
from .envelope_bounds import BoundResult, lb_enhanced, lb_improved, lb_keogh
from .envelopes import (
    DerivedEnvelopes,
    EnvelopePair,
    compute_envelopes,
    derived_envelopes,
)
from .tight_bounds import (
    lb_petitjean,
    lb_petitjean_nolr,
    lb_webb,
    lb_webb_enhanced,
    lb_webb_nolr,
    lb_webb_star,
)

SELECTOR_KINDS = (
    "none",
    "dtw",
    "keogh",
    "improved",
    "enhanced",
    "petitjean",
    "petitjean_nolr",
    "webb",
    "webb_nolr",
    "webb_star",
    "webb_enhanced",
)

_NEEDS_K = ("enhanced", "webb_enhanced")


@dataclass(frozen=True)
class BoundSelector:
    """Names the bound a harness should use; k applies to the banded kinds."""

    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in SELECTOR_KINDS:
            raise ValueError(
                f"unknown bound selector {self.kind!r}; expected one of {SELECTOR_KINDS}"
            )
        if self.kind in _NEEDS_K:
            if self.k is None or self.k < 0:
                raise ValueError(f"selector {self.kind!r} needs a band depth k >= 0")
        elif self.k is not None:
            raise ValueError(f"selector {self.kind!r} does not take k")

    def label(self) -> str:
        if self.k is not None:
            return f"{self.kind}({self.k})"
        return self.kind


@dataclass(frozen=True)
class CandidateEntry:
    series: TimeSeries
    env: EnvelopePair
    denv: DerivedEnvelopes


@dataclass(frozen=True)
class CandidateIndex:
    """A training collection with envelopes precomputed per candidate."""

    entries: tuple[CandidateEntry, ...]
    window: Window

    @classmethod
    def build(cls, series: list[TimeSeries], w: Window) -> "CandidateIndex":
        entries = []
        for s in series:
            env = compute_envelopes(s, w)
            entries.append(CandidateEntry(series=s, env=env, denv=derived_envelopes(env)))
        return cls(entries=tuple(entries), window=w)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SearchReport:
    """Result and work accounting for one query against one candidate set."""

    query_id: str | None
    nn_id: str | None
    nn_index: int
    nn_distance: float
    bounds_computed: int
    bounds_abandoned: int
    dtw_calls: int
    dtw_cells: int
    wall_time: float


def evaluate_bound(
    sel: BoundSelector,
    q: TimeSeries,
    q_env: EnvelopePair,
    q_denv: DerivedEnvelopes,
    entry: CandidateEntry,
    w: Window,
    cf: CostFunction,
    cutoff: float | None,
) -> BoundResult:
    """Evaluate the selected bound for one (query, candidate) pair.

    The corner-path bounds need length >= 7; on shorter series the harness
    falls back to the same-admissibility full-range variant (petitjean ->
    petitjean_nolr, webb -> webb_nolr, webb_star -> keogh).
    """
    kind = sel.kind
    cand = entry.series
    if len(q.values) < 7:
        if kind == "petitjean":
            kind = "petitjean_nolr"
        elif kind == "webb":
            kind = "webb_nolr"
        elif kind == "webb_star":
            kind = "keogh"
    if kind == "keogh":
        return lb_keogh(q, entry.env, cf, cutoff)
    if kind == "improved":
        return lb_improved(q, cand, entry.env, w, cf, cutoff)
    if kind == "enhanced":
        return lb_enhanced(q, cand, entry.env, w, sel.k, cf, cutoff)
    if kind == "petitjean":
        return lb_petitjean(q, cand, q_env, entry.env, w, cf, cutoff)
    if kind == "petitjean_nolr":
        return lb_petitjean_nolr(q, cand, q_env, entry.env, w, cf, cutoff)
    if kind == "webb":
        return lb_webb(q, cand, q_env, entry.env, q_denv, entry.denv, w, cf, cutoff)
    if kind == "webb_nolr":
        return lb_webb_nolr(q, cand, q_env, entry.env, q_denv, entry.denv, w, cf, cutoff)
    if kind == "webb_star":
        return lb_webb_star(q, cand, q_env, entry.env, q_denv, entry.denv, w, cf, cutoff)
    if kind == "webb_enhanced":
        return lb_webb_enhanced(
            q, cand, q_env, entry.env, q_denv, entry.denv, w, sel.k, cf, cutoff
        )
    raise ValueError(f"selector {sel.kind!r} is not a bound")


def search_random_order(
    q: TimeSeries,
    index: CandidateIndex,
    w: Window,
    cf: CostFunction,
    sel: BoundSelector | None,
    rng_seed,
) -> SearchReport:
    """1-NN search visiting candidates in a seeded random order.

    The first candidate's DTW is computed unconditionally. For the rest the
    bound is evaluated with the incumbent distance as cutoff, and DTW runs
    only when the bound is strictly below the incumbent (an equal bound
    cannot yield a strictly better neighbour). sel None disables bounding:
    every candidate gets a DTW call. Exact distance ties are broken toward
    the lowest original candidate index among the candidates whose DTW
    completed.
    """
    n = len(index.entries)
    if n == 0:
        raise EmptyTrainingSet("search needs at least one candidate")
    if sel is not None:
        if sel.kind == "none":
            sel = None
        elif sel.kind == "dtw":
            raise ValueError("the dtw selector is a tightness diagnostic, not a search bound")
    t0 = time.perf_counter()
    q_env = compute_envelopes(q, w)
    q_denv = derived_envelopes(q_env)
    rng = np.random.default_rng(rng_seed)
    order = rng.permutation(n)
    best_d = None
    best_idx = -1
    bounds_computed = 0
    bounds_abandoned = 0
    dtw_calls = 0
    dtw_cells = 0
    for t in order:
        t = int(t)
        entry = index.entries[t]
        if best_d is None:
            r = dtw(q, entry.series, w, cf)
            dtw_calls += 1
            dtw_cells += r.cells_computed
            best_d = r.distance
            best_idx = t
            continue
        if sel is not None:
            br = evaluate_bound(sel, q, q_env, q_denv, entry, w, cf, best_d)
            bounds_computed += 1
            if br.abandoned:
                bounds_abandoned += 1
            if not br.value < best_d:
                continue
        r = dtw_early_abandon(q, entry.series, w, cf, best_d)
        dtw_calls += 1
        dtw_cells += r.cells_computed
        if not r.abandoned:
            if r.distance < best_d:
                best_d = r.distance
                best_idx = t
            elif r.distance == best_d and t < best_idx:
                best_idx = t
    wall = time.perf_counter() - t0
    return SearchReport(
        query_id=q.id,
        nn_id=index.entries[best_idx].series.id,
        nn_index=best_idx,
        nn_distance=best_d,
        bounds_computed=bounds_computed,
        bounds_abandoned=bounds_abandoned,
        dtw_calls=dtw_calls,
        dtw_cells=dtw_cells,
        wall_time=wall,
    )


def search_sorted(
    q: TimeSeries,
    index: CandidateIndex,
    w: Window,
    cf: CostFunction,
    sel: BoundSelector,
) -> SearchReport:
    """1-NN search scanning candidates in ascending bound order.

    Every candidate's bound is computed without a cutoff, candidates are
    sorted by (bound, original index), and DTW runs down the list until the
    next bound is >= the incumbent distance, at which point no remaining
    candidate can improve. Deterministic: no seed is involved.
    """
    n = len(index.entries)
    if n == 0:
        raise EmptyTrainingSet("search needs at least one candidate")
    if sel is None or sel.kind in ("none", "dtw"):
        raise ValueError("the sorted protocol requires a bound selector")
    t0 = time.perf_counter()
    q_env = compute_envelopes(q, w)
    q_denv = derived_envelopes(q_env)
    bounds = []
    for t, entry in enumerate(index.entries):
        br = evaluate_bound(sel, q, q_env, q_denv, entry, w, cf, None)
        bounds.append((br.value, t))
    bounds.sort()
    best_d = None
    best_idx = -1
    dtw_calls = 0
    dtw_cells = 0
    for value, t in bounds:
        if best_d is not None and value >= best_d:
            break
        entry = index.entries[t]
        if best_d is None:
            r = dtw(q, entry.series, w, cf)
        else:
            r = dtw_early_abandon(q, entry.series, w, cf, best_d)
        dtw_calls += 1
        dtw_cells += r.cells_computed
        if r.abandoned:
            continue
        if best_d is None or r.distance < best_d:
            best_d = r.distance
            best_idx = t
        elif r.distance == best_d and t < best_idx:
            best_idx = t
    wall = time.perf_counter() - t0
    return SearchReport(
        query_id=q.id,
        nn_id=index.entries[best_idx].series.id,
        nn_index=best_idx,
        nn_distance=best_d,
        bounds_computed=n,
        bounds_abandoned=0,
        dtw_calls=dtw_calls,
        dtw_cells=dtw_cells,
        wall_time=wall,
    )
