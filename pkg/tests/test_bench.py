"""Tests for the benchmark harness: tightness runs, search experiments, CSV output."""

import io
import os

import numpy as np
import pytest

from dtw_bounds.bench import (
    RunConfig,
    SearchSummary,
    TightnessRecord,
    run_search_experiment,
    run_selftest,
    run_tightness,
    synthetic_walk_pair,
    write_search_csv,
    write_tightness_csv,
)
from dtw_bounds.core import ABSOLUTE, SQUARED, TimeSeries, WindowZeroRejected
from dtw_bounds.search import BoundSelector
from dtw_bounds.ucr import Absolute, Fraction, LabeledSeries, dump_split_file

from oracles import naive_dtw, oracle_keogh


def _write_dataset(tmp_path, name, n_train=4, n_test=3, length=12, seed=5):
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(n_train + n_test):
        a, _ = synthetic_walk_pair(rng, length)
        rows.append(LabeledSeries(label=i % 2, series=a))
    train = str(tmp_path / f"{name}_TRAIN.tsv")
    test = str(tmp_path / f"{name}_TEST.tsv")
    dump_split_file(rows[:n_train], train, delimiter="\t")
    dump_split_file(rows[n_train:], test, delimiter="\t")
    return train, test, rows[:n_train], rows[n_train:]


class TestSyntheticWalkPair:
    def test_same_seed_reproduces_pair(self):
        a1, b1 = synthetic_walk_pair(np.random.default_rng(42), 20)
        a2, b2 = synthetic_walk_pair(np.random.default_rng(42), 20)
        assert a1.values == a2.values
        assert b1.values == b2.values

    def test_lengths_and_types(self):
        rng = np.random.default_rng(0)
        for length in (1, 2, 7, 33):
            a, b = synthetic_walk_pair(rng, length)
            assert isinstance(a, TimeSeries) and isinstance(b, TimeSeries)
            assert len(a.values) == length
            assert len(b.values) == length
            assert all(np.isfinite(v) for v in a.values + b.values)

    def test_stream_advances_between_draws(self):
        rng = np.random.default_rng(7)
        a1, _ = synthetic_walk_pair(rng, 15)
        a2, _ = synthetic_walk_pair(rng, 15)
        assert a1.values != a2.values


class TestSelftest:
    def test_small_run_is_clean(self):
        checked, violations = run_selftest(instances=60, seed=3)
        assert checked == 60
        assert violations == []

    def test_reports_every_instance_checked(self):
        checked, _ = run_selftest(instances=25, seed=11)
        assert checked == 25


class TestTightness:
    def test_records_have_expected_fields(self, tmp_path):
        train, test, train_rows, test_rows = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train,
            test_path=test,
            window=Absolute(2),
            selectors=(BoundSelector("keogh"), BoundSelector("webb"), BoundSelector("dtw")),
        )
        records = run_tightness(cfg)
        assert [r.bound_kind for r in records] == ["keogh", "webb", "dtw"]
        for rec in records:
            assert rec.dataset == "Toy"
            assert rec.w == 2
            assert rec.pairs_counted == len(train_rows) * len(test_rows) - rec.pairs_excluded_zero_dtw
            assert 0.0 <= rec.mean_tightness <= 1.0

    def test_dtw_selector_has_tightness_one(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train, test_path=test, window=Absolute(2), selectors=(BoundSelector("dtw"),)
        )
        (record,) = run_tightness(cfg)
        assert record.mean_tightness == pytest.approx(1.0)

    def test_mean_matches_direct_average(self, tmp_path):
        train, test, train_rows, test_rows = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train, test_path=test, window=Absolute(3), selectors=(BoundSelector("keogh"),)
        )
        (record,) = run_tightness(cfg)
        ratios = []
        for q in test_rows:
            for c in train_rows:
                dist = naive_dtw(list(q.series.values), list(c.series.values), 3, SQUARED.evaluate)
                if dist == 0.0:
                    continue
                bound = oracle_keogh(list(q.series.values), list(c.series.values), 3, SQUARED.evaluate)
                ratios.append(bound / dist)
        assert record.pairs_counted == len(ratios)
        assert record.mean_tightness == pytest.approx(sum(ratios) / len(ratios), rel=1e-12)

    def test_zero_distance_pairs_are_excluded(self, tmp_path):
        rng = np.random.default_rng(9)
        shared = synthetic_walk_pair(rng, 10)[0]
        other = synthetic_walk_pair(rng, 10)[0]
        train = str(tmp_path / "Dup_TRAIN.tsv")
        test = str(tmp_path / "Dup_TEST.tsv")
        dump_split_file([LabeledSeries(0, shared), LabeledSeries(1, other)], train, delimiter="\t")
        dump_split_file([LabeledSeries(0, shared)], test, delimiter="\t")
        cfg = RunConfig(
            train_path=train, test_path=test, window=Absolute(2), selectors=(BoundSelector("keogh"),)
        )
        (record,) = run_tightness(cfg)
        assert record.pairs_excluded_zero_dtw == 1
        assert record.pairs_counted == 1

    def test_window_below_one_is_rejected(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train, test_path=test, window=Absolute(0), selectors=(BoundSelector("keogh"),)
        )
        with pytest.raises(WindowZeroRejected):
            run_tightness(cfg)

    def test_needs_at_least_one_selector(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        with pytest.raises(ValueError):
            run_tightness(RunConfig(train_path=train, test_path=test, window=Absolute(2)))

    def test_none_selector_is_rejected(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train, test_path=test, window=Absolute(2), selectors=(BoundSelector("none"),)
        )
        with pytest.raises(ValueError):
            run_tightness(cfg)

    def test_parallel_matches_serial(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy", n_train=5, n_test=4)
        selectors = (BoundSelector("keogh"), BoundSelector("webb_enhanced", k=2))
        serial = run_tightness(
            RunConfig(train_path=train, test_path=test, window=Absolute(2), selectors=selectors)
        )
        parallel = run_tightness(
            RunConfig(
                train_path=train, test_path=test, window=Absolute(2), selectors=selectors, parallel=True
            )
        )
        assert serial == parallel

    def test_dataset_name_override(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train,
            test_path=test,
            window=Absolute(2),
            selectors=(BoundSelector("keogh"),),
            dataset_name="Renamed",
        )
        (record,) = run_tightness(cfg)
        assert record.dataset == "Renamed"

    def test_fractional_window_resolves_against_length(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy", length=20)
        cfg = RunConfig(
            train_path=train, test_path=test, window=Fraction(0.1), selectors=(BoundSelector("keogh"),)
        )
        (record,) = run_tightness(cfg)
        assert record.w == 2

    def test_absolute_cost_changes_the_numbers(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        base = RunConfig(
            train_path=train, test_path=test, window=Absolute(2), selectors=(BoundSelector("keogh"),)
        )
        alt = RunConfig(
            train_path=train,
            test_path=test,
            window=Absolute(2),
            selectors=(BoundSelector("keogh"),),
            cost=ABSOLUTE,
        )
        (r_sq,) = run_tightness(base)
        (r_abs,) = run_tightness(alt)
        assert r_sq.mean_tightness != r_abs.mean_tightness


class TestSearchExperiment:
    def test_summary_fields(self, tmp_path):
        train, test, _, test_rows = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train,
            test_path=test,
            window=Absolute(2),
            selectors=(BoundSelector("keogh"),),
            protocol="sorted",
            reps=3,
            seed=9,
        )
        (summary,) = run_search_experiment(cfg)
        assert summary.dataset == "Toy"
        assert summary.bound == "keogh"
        assert summary.protocol == "sorted"
        assert summary.mean_time_s > 0.0
        assert summary.sd_time_s >= 0.0
        assert summary.dtw_calls >= 1.0
        assert summary.abandons == 0.0
        assert 0.0 <= summary.accuracy <= 1.0

    def test_random_protocol_accepts_no_bound(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train,
            test_path=test,
            window=Absolute(2),
            selectors=(BoundSelector("none"),),
            protocol="random",
            reps=1,
        )
        (summary,) = run_search_experiment(cfg)
        assert summary.bound == "none"
        # without a bound every candidate is scored for every query: 3 queries x 4 candidates
        assert summary.dtw_calls == 12.0

    def test_accuracy_is_seed_independent(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy", n_train=6, n_test=4)
        accs = set()
        for seed in (1, 2, 3):
            cfg = RunConfig(
                train_path=train,
                test_path=test,
                window=Absolute(2),
                selectors=(BoundSelector("webb"),),
                protocol="random",
                reps=1,
                seed=seed,
            )
            (summary,) = run_search_experiment(cfg)
            accs.add(summary.accuracy)
        assert len(accs) == 1

    def test_single_rep_has_zero_time_spread(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train,
            test_path=test,
            window=Absolute(2),
            selectors=(BoundSelector("keogh"),),
            reps=1,
        )
        (summary,) = run_search_experiment(cfg)
        assert summary.sd_time_s == 0.0

    def test_dtw_selector_is_rejected(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train, test_path=test, window=Absolute(2), selectors=(BoundSelector("dtw"),)
        )
        with pytest.raises(ValueError):
            run_search_experiment(cfg)

    def test_reps_below_one_rejected(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train,
            test_path=test,
            window=Absolute(2),
            selectors=(BoundSelector("keogh"),),
            reps=0,
        )
        with pytest.raises(ValueError):
            run_search_experiment(cfg)

    def test_multiple_selectors_give_one_row_each(self, tmp_path):
        train, test, _, _ = _write_dataset(tmp_path, "Toy")
        cfg = RunConfig(
            train_path=train,
            test_path=test,
            window=Absolute(2),
            selectors=(BoundSelector("keogh"), BoundSelector("webb"), BoundSelector("enhanced", k=1)),
            reps=1,
        )
        rows = run_search_experiment(cfg)
        assert [r.bound for r in rows] == ["keogh", "webb", "enhanced(1)"]


class TestCsvWriters:
    def test_tightness_csv_shape(self):
        records = [
            TightnessRecord("Toy", "keogh", 2, 0.75, 8, 0),
            TightnessRecord("Toy", "webb", 2, 0.8023257922628857, 8, 1),
        ]
        buf = io.StringIO()
        write_tightness_csv(records, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "# dtw-bounds v1"
        assert lines[1] == "dataset,bound,w,mean_tightness,pairs_counted,pairs_excluded_zero_dtw"
        assert lines[2] == "Toy,keogh,2,0.75,8,0"
        assert lines[3] == "Toy,webb,2,0.8023257922628857,8,1"

    def test_tightness_floats_round_trip(self):
        value = 0.123456789012345678
        buf = io.StringIO()
        write_tightness_csv([TightnessRecord("D", "keogh", 1, value, 3, 0)], buf)
        cell = buf.getvalue().splitlines()[2].split(",")[3]
        assert float(cell) == value

    def test_search_csv_shape(self):
        rows = [SearchSummary("Toy", "keogh", "sorted", 0.001, 0.0002, 3.0, 0.0, 0.5)]
        buf = io.StringIO()
        write_search_csv(rows, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "# dtw-bounds v1"
        assert lines[1] == "dataset,bound,protocol,mean_time_s,sd_time_s,dtw_calls,abandons,accuracy"
        assert lines[2] == "Toy,keogh,sorted,0.001,0.0002,3.0,0.0,0.5"

    def test_comment_header_skippable_by_csv_readers(self):
        buf = io.StringIO()
        write_tightness_csv([TightnessRecord("D", "webb", 4, 0.5, 2, 0)], buf)
        data_lines = [ln for ln in buf.getvalue().splitlines() if not ln.startswith("#")]
        header = data_lines[0].split(",")
        row = data_lines[1].split(",")
        assert dict(zip(header, row))["bound"] == "webb"
