"""Tests for the nearest-neighbor search harnesses."""

import numpy as np
import pytest

from dtw_bounds import (
    ABSOLUTE,
    SQUARED,
    BoundSelector,
    CandidateIndex,
    EmptyTrainingSet,
    SearchReport,
    Window,
    as_series,
    search_random_order,
    search_sorted,
)

from oracles import exhaustive_nn

_SELECTORS = [
    BoundSelector("keogh"),
    BoundSelector("improved"),
    BoundSelector("enhanced", k=1),
    BoundSelector("petitjean"),
    BoundSelector("petitjean_nolr"),
    BoundSelector("webb"),
    BoundSelector("webb_nolr"),
    BoundSelector("webb_star"),
    BoundSelector("webb_enhanced", k=2),
]


def _random_problem(rng, min_len=7, max_len=24, max_candidates=8):
    length = int(rng.integers(min_len, max_len + 1))
    w = int(rng.integers(1, length + 1))
    n = int(rng.integers(2, max_candidates + 1))
    q = as_series(np.cumsum(rng.standard_normal(length)), id="q")
    cands = [
        as_series(
            np.cumsum(rng.standard_normal(length)) + rng.normal(scale=0.5),
            id=f"c{t}",
        )
        for t in range(n)
    ]
    return q, cands, w


class TestAgainstExhaustiveSearch:
    def test_both_protocols_match_exhaustive_for_every_selector(self):
        rng = np.random.default_rng(123987)
        for case in range(60):
            q, cands, w = _random_problem(rng)
            cf = SQUARED if case % 2 == 0 else ABSOLUTE
            index = CandidateIndex.build(cands, Window(w))
            want_idx, want_dist = exhaustive_nn(
                q.values, [c.values for c in cands], w, cf.evaluate
            )
            for sel in _SELECTORS:
                got = search_sorted(q, index, Window(w), cf, sel)
                assert got.nn_index == want_idx, (case, sel.label(), "sorted")
                np.testing.assert_allclose(got.nn_distance, want_dist, rtol=1e-9)
                got = search_random_order(q, index, Window(w), cf, sel, case)
                assert got.nn_index == want_idx, (case, sel.label(), "random")
                np.testing.assert_allclose(got.nn_distance, want_dist, rtol=1e-9)
            got = search_random_order(q, index, Window(w), cf, None, case)
            assert got.nn_index == want_idx

    def test_short_series_fall_back_to_variants_without_end_paths(self):
        rng = np.random.default_rng(2244)
        fallback = [
            BoundSelector("petitjean"),
            BoundSelector("webb"),
            BoundSelector("webb_star"),
        ]
        for case in range(30):
            q, cands, w = _random_problem(rng, min_len=3, max_len=6)
            index = CandidateIndex.build(cands, Window(w))
            want_idx, want_dist = exhaustive_nn(
                q.values, [c.values for c in cands], w, SQUARED.evaluate
            )
            for sel in fallback:
                for protocol in (
                    lambda: search_sorted(q, index, Window(w), SQUARED, sel),
                    lambda: search_random_order(q, index, Window(w), SQUARED, sel, case),
                ):
                    got = protocol()
                    assert got.nn_index == want_idx
                    np.testing.assert_allclose(got.nn_distance, want_dist, rtol=1e-9)


class TestTieBreaking:
    def test_lowest_original_index_wins_exact_ties(self):
        q = as_series([0.0, 0.0, 0.0], id="q")
        cands = [
            as_series([0.0, 0.0, 1.0], id="c0"),
            as_series([0.0, 0.0, 1.0], id="c1"),
            as_series([5.0, 5.0, 5.0], id="c2"),
        ]
        index = CandidateIndex.build(cands, Window(1))
        for seed in range(10):
            r = search_random_order(q, index, Window(1), SQUARED, None, seed)
            assert (r.nn_index, r.nn_id, r.nn_distance) == (0, "c0", 1.0)
        r = search_sorted(q, index, Window(1), SQUARED, BoundSelector("keogh"))
        assert (r.nn_index, r.nn_id, r.nn_distance) == (0, "c0", 1.0)


class TestReportAccounting:
    def test_random_order_counters(self):
        rng = np.random.default_rng(31)
        q, cands, w = _random_problem(rng)
        index = CandidateIndex.build(cands, Window(w))
        r = search_random_order(q, index, Window(w), SQUARED, BoundSelector("keogh"), 5)
        assert isinstance(r, SearchReport)
        assert r.query_id == "q"
        assert 1 <= r.dtw_calls <= len(cands)
        assert r.bounds_computed <= len(cands) - 1  # first candidate skips the bound
        assert r.bounds_abandoned <= r.bounds_computed
        assert r.dtw_cells > 0
        assert r.wall_time >= 0.0

    def test_sorted_counters(self):
        rng = np.random.default_rng(32)
        q, cands, w = _random_problem(rng)
        index = CandidateIndex.build(cands, Window(w))
        r = search_sorted(q, index, Window(w), SQUARED, BoundSelector("webb"))
        assert r.bounds_computed == len(cands)  # sorted computes every bound fully
        assert r.bounds_abandoned == 0
        assert 1 <= r.dtw_calls <= len(cands)

    def test_same_seed_reproduces_report(self):
        rng = np.random.default_rng(33)
        q, cands, w = _random_problem(rng)
        index = CandidateIndex.build(cands, Window(w))
        a = search_random_order(q, index, Window(w), SQUARED, BoundSelector("webb"), 99)
        b = search_random_order(q, index, Window(w), SQUARED, BoundSelector("webb"), 99)
        assert (a.nn_index, a.nn_distance, a.dtw_calls, a.bounds_computed) == (
            b.nn_index,
            b.nn_distance,
            b.dtw_calls,
            b.bounds_computed,
        )

    def test_result_is_permutation_invariant(self):
        rng = np.random.default_rng(34)
        q, cands, w = _random_problem(rng)
        index = CandidateIndex.build(cands, Window(w))
        results = {
            (
                search_random_order(
                    q, index, Window(w), SQUARED, BoundSelector("improved"), seed
                ).nn_index
            )
            for seed in range(8)
        }
        assert len(results) == 1


class TestValidation:
    def test_empty_candidate_set(self):
        index = CandidateIndex.build([], Window(1))
        q = as_series([1.0, 2.0, 3.0])
        with pytest.raises(EmptyTrainingSet):
            search_random_order(q, index, Window(1), SQUARED, None, 0)
        with pytest.raises(EmptyTrainingSet):
            search_sorted(q, index, Window(1), SQUARED, BoundSelector("keogh"))

    def test_sorted_rejects_missing_or_exhaustive_selector(self):
        cands = [as_series([1.0, 2.0, 3.0], id="c0")]
        index = CandidateIndex.build(cands, Window(1))
        q = as_series([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            search_sorted(q, index, Window(1), SQUARED, None)
        with pytest.raises(ValueError):
            search_sorted(q, index, Window(1), SQUARED, BoundSelector("none"))
        with pytest.raises(ValueError):
            search_sorted(q, index, Window(1), SQUARED, BoundSelector("dtw"))

    def test_random_rejects_dtw_selector(self):
        cands = [as_series([1.0, 2.0, 3.0], id="c0")]
        index = CandidateIndex.build(cands, Window(1))
        q = as_series([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            search_random_order(q, index, Window(1), SQUARED, BoundSelector("dtw"), 0)

    def test_selector_validation(self):
        with pytest.raises(ValueError):
            BoundSelector("enhanced")  # needs k
        with pytest.raises(ValueError):
            BoundSelector("webb_enhanced")  # needs k
        with pytest.raises(ValueError):
            BoundSelector("keogh", k=2)  # does not take k
        with pytest.raises(ValueError):
            BoundSelector("no_such_bound")
        assert BoundSelector("enhanced", k=8).label() == "enhanced(8)"
        assert BoundSelector("webb").label() == "webb"
