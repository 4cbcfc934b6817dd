"""Command-line entry points for the benchmark drivers and debug dumps."""

from __future__ import annotations

import argparse
import csv
import sys

from .bench import (
    CSV_HEADER_COMMENT,
    RunConfig,
    run_search_experiment,
    run_selftest,
    run_tightness,
    write_search_csv,
    write_tightness_csv,
)
from .core import ABSOLUTE, SQUARED, DtwBoundsError
from .envelopes import compute_envelopes, derived_envelopes
from .search import BoundSelector, SELECTOR_KINDS
from .ucr import Absolute, Fraction, load_dataset, parse_split_file, resolve_window

_BOUND_CHOICES = [k for k in SELECTOR_KINDS if k != "none"]


def _parse_window(text: str):
    if text.endswith("%"):
        return Fraction(float(text[:-1]) / 100.0)
    return Absolute(int(text))


def _cost(name: str):
    return SQUARED if name == "squared" else ABSOLUTE


def _selectors(names: list[str], k: int) -> tuple[BoundSelector, ...]:
    sels = []
    for name in names:
        if name in ("enhanced", "webb_enhanced"):
            sels.append(BoundSelector(name, k))
        else:
            sels.append(BoundSelector(name))
    return tuple(sels)


def _add_data_args(p: argparse.ArgumentParser, need_test: bool = True) -> None:
    p.add_argument("--train", required=True, help="training split file")
    if need_test:
        p.add_argument("--test", required=True, help="test split file")
    p.add_argument("--window", required=True,
                   help="warping window: an integer half-width or a percentage like 10%%")
    p.add_argument("--delta", choices=["squared", "abs"], default="squared",
                   help="pairwise cost (default squared)")
    p.add_argument("--znorm", action="store_true",
                   help="z-normalise every series at load")
    p.add_argument("--out", help="write CSV here instead of stdout")


def _open_out(path: str | None):
    if path:
        return open(path, "w", encoding="utf-8", newline="")
    return sys.stdout


def _cmd_tightness(args) -> int:
    cfg = RunConfig(
        train_path=args.train,
        test_path=args.test,
        window=_parse_window(args.window),
        cost=_cost(args.delta),
        selectors=_selectors(args.bound, args.k),
        znorm=args.znorm,
        parallel=args.parallel,
    )
    records = run_tightness(cfg)
    fh = _open_out(args.out)
    try:
        write_tightness_csv(records, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _cmd_search(args) -> int:
    cfg = RunConfig(
        train_path=args.train,
        test_path=args.test,
        window=_parse_window(args.window),
        cost=_cost(args.delta),
        selectors=_selectors(args.bound, args.k),
        protocol=args.protocol,
        reps=args.reps,
        seed=args.seed,
        znorm=args.znorm,
    )
    rows = run_search_experiment(cfg)
    fh = _open_out(args.out)
    try:
        write_search_csv(rows, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _cmd_envelope_dump(args) -> int:
    rows = parse_split_file(args.train, role="row", znorm=args.znorm)
    if not 0 <= args.row < len(rows):
        print(f"row {args.row} out of range (file has {len(rows)} rows)",
              file=sys.stderr)
        return 2
    series = rows[args.row].series
    w = resolve_window(_parse_window(args.window), len(series.values))
    env = compute_envelopes(series, w)
    fh = _open_out(args.out)
    try:
        fh.write(CSV_HEADER_COMMENT + "\n")
        writer = csv.writer(fh)
        writer.writerow(["index", "value", "lower", "upper"])
        for i, v in enumerate(series.values, start=1):
            writer.writerow([i, repr(v), repr(env.lower[i - 1]), repr(env.upper[i - 1])])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _cmd_contrib_dump(args) -> int:
    from .search import CandidateEntry

    ds = load_dataset(args.train, args.test, znorm=args.znorm)
    q = ds.test[args.query_row].series
    cand = ds.train[args.candidate_row].series
    w = resolve_window(_parse_window(args.window), ds.series_length)
    cf = _cost(args.delta)
    sel = (
        BoundSelector(args.bound, args.k)
        if args.bound in ("enhanced", "webb_enhanced")
        else BoundSelector(args.bound)
    )
    q_env = compute_envelopes(q, w)
    q_denv = derived_envelopes(q_env)
    c_env = compute_envelopes(cand, w)
    entry = CandidateEntry(series=cand, env=c_env, denv=derived_envelopes(c_env))

    # Re-dispatch with term collection; evaluate_bound itself stays lean.
    from . import envelope_bounds as eb
    from . import tight_bounds as tb

    kind = sel.kind
    if kind == "keogh":
        br = eb.lb_keogh(q, c_env, cf, collect_terms=True)
    elif kind == "improved":
        br = eb.lb_improved(q, cand, c_env, w, cf, collect_terms=True)
    elif kind == "enhanced":
        br = eb.lb_enhanced(q, cand, c_env, w, sel.k, cf, collect_terms=True)
    elif kind == "petitjean":
        br = tb.lb_petitjean(q, cand, q_env, c_env, w, cf, collect_terms=True)
    elif kind == "petitjean_nolr":
        br = tb.lb_petitjean_nolr(q, cand, q_env, c_env, w, cf, collect_terms=True)
    elif kind == "webb":
        br = tb.lb_webb(q, cand, q_env, c_env, q_denv, entry.denv, w, cf,
                        collect_terms=True)
    elif kind == "webb_nolr":
        br = tb.lb_webb_nolr(q, cand, q_env, c_env, q_denv, entry.denv, w, cf,
                             collect_terms=True)
    elif kind == "webb_star":
        br = tb.lb_webb_star(q, cand, q_env, c_env, q_denv, entry.denv, w, cf,
                             collect_terms=True)
    elif kind == "webb_enhanced":
        br = tb.lb_webb_enhanced(q, cand, q_env, c_env, q_denv, entry.denv, w,
                                 sel.k, cf, collect_terms=True)
    else:
        print(f"bound {args.bound!r} has no contribution dump", file=sys.stderr)
        return 2
    fh = _open_out(args.out)
    try:
        fh.write(CSV_HEADER_COMMENT + "\n")
        writer = csv.writer(fh)
        writer.writerow(["index", "clause", "contribution"])
        for index, clause, contribution in br.terms:
            writer.writerow([index, clause, repr(contribution)])
        writer.writerow(["total", sel.label(), repr(br.value)])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _cmd_selftest(args) -> int:
    checked, violations = run_selftest(instances=args.instances, seed=args.seed)
    print(f"checked {checked} synthetic instances")
    if violations:
        for v in violations[:50]:
            print(f"FAIL {v}")
        if len(violations) > 50:
            print(f"... and {len(violations) - 50} more")
        print(f"selftest: FAIL ({len(violations)} violations)")
        return 1
    print("selftest: PASS")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtw-bounds",
        description="Constrained DTW lower-bound benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tightness", help="mean bound/DTW ratio over all pairs")
    _add_data_args(p)
    p.add_argument("--bound", action="append", required=True,
                   choices=_BOUND_CHOICES,
                   help="bound to evaluate; repeatable; 'dtw' is a diagnostic "
                        "whose tightness is exactly 1")
    p.add_argument("--k", type=int, default=8,
                   help="band depth for the banded bounds (default 8)")
    p.add_argument("--parallel", action="store_true",
                   help="process-parallel over queries")
    p.set_defaults(fn=_cmd_tightness)

    p = sub.add_parser("search", help="timed 1-NN sweeps with a bound")
    _add_data_args(p)
    p.add_argument("--bound", action="append", required=True,
                   choices=[k for k in SELECTOR_KINDS if k != "dtw"],
                   help="bound selector; repeatable; 'none' disables pruning")
    p.add_argument("--k", type=int, default=8,
                   help="band depth for the banded bounds (default 8)")
    p.add_argument("--protocol", choices=["random", "sorted"], default="random")
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("envelope-dump",
                       help="dump one series' envelopes as CSV")
    p.add_argument("--train", required=True, help="split file to read")
    p.add_argument("--row", type=int, default=0, help="row number (default 0)")
    p.add_argument("--window", required=True,
                   help="integer half-width or percentage")
    p.add_argument("--znorm", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_envelope_dump)

    p = sub.add_parser("contrib-dump",
                       help="dump one bound's per-element contributions as CSV")
    _add_data_args(p)
    p.add_argument("--bound", required=True,
                   choices=[k for k in _BOUND_CHOICES if k != "dtw"])
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--query-row", type=int, default=0,
                   help="row in the test file (default 0)")
    p.add_argument("--candidate-row", type=int, default=0,
                   help="row in the train file (default 0)")
    p.set_defaults(fn=_cmd_contrib_dump)

    p = sub.add_parser("selftest",
                       help="soundness spot-checks on synthetic instances")
    p.add_argument("--instances", type=int, default=2000)
    p.add_argument("--seed", type=int, default=13)
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (DtwBoundsError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
