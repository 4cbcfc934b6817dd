"""Envelope-based DTW lower bounds: LB_Keogh, LB_Improved, LB_Enhanced.

All three require a cost that is monotone in the gap |x - y|: each element's
contribution is its distance to the nearest edge of an envelope band that is
guaranteed to contain everything the element can align with.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CostFunction,
    CostFunctionInadmissible,
    InvalidK,
    LengthMismatch,
    TimeSeries,
    Window,
)
from .envelopes import EnvelopePair, _sliding


@dataclass(frozen=True)
class BoundResult:
    """Outcome of a lower-bound evaluation.

    value is the bound (or the partial sum if abandoned). terms_evaluated
    counts accumulation steps. terms, populated only when requested, holds
    one (index, clause, contribution) triple per accumulation step.
    """

    value: float
    abandoned: bool = False
    terms_evaluated: int = 0
    terms: tuple[tuple[int, str, float], ...] | None = None


@dataclass(frozen=True)
class BandSpec:
    """One L-shaped band of the windowed cost matrix.

    side "left" selects the band anchored on column `index` (cells above and
    to the left of the diagonal cell); side "right" mirrors it below and to
    the right. Cell coordinates are 1-based (row r indexes A, column c
    indexes B). A band holds at most 2w + 1 cells, and every warping path
    crosses it at least once.
    """

    side: str
    index: int
    window: Window

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"band side must be 'left' or 'right', got {self.side!r}")
        if self.index < 1:
            raise ValueError(f"band index must be >= 1, got {self.index}")


def band_cells(spec: BandSpec, length: int) -> tuple[tuple[int, int], ...]:
    """Enumerate the band's (row, column) cells, 1-based."""
    i = spec.index
    w = spec.window.w
    if i > length:
        raise ValueError(f"band index {i} exceeds series length {length}")
    cells: list[tuple[int, int]] = []
    if spec.side == "left":
        lo = max(1, i - w)
        for r in range(lo, i + 1):
            cells.append((r, i))
        for c in range(i - 1, lo - 1, -1):
            cells.append((i, c))
    else:
        hi = min(length, i + w)
        for r in range(hi, i - 1, -1):
            cells.append((r, i))
        for c in range(i + 1, hi + 1):
            cells.append((i, c))
    return tuple(cells)


def band_min(a: TimeSeries, b: TimeSeries, spec: BandSpec, cf: CostFunction) -> float:
    """Minimum pairwise cost over the band's cells."""
    av = a.values
    bv = b.values
    if len(av) != len(bv):
        raise LengthMismatch(f"series lengths differ: {len(av)} vs {len(bv)}")
    d = cf.evaluate
    best = None
    for r, c in band_cells(spec, len(av)):
        v = d(av[r - 1], bv[c - 1])
        if best is None or v < best:
            best = v
    return best


def _check_envelope(a: TimeSeries, env: EnvelopePair, w: Window | None = None) -> None:
    if len(a.values) != len(env.upper):
        raise LengthMismatch(
            f"series length {len(a.values)} does not match envelope length {len(env.upper)}"
        )
    if w is not None and env.window.w != w.w:
        raise ValueError(
            f"envelope was built with w={env.window.w}, call requested w={w.w}"
        )


def _require_monotone(cf: CostFunction) -> None:
    if not cf.monotone_in_gap:
        raise CostFunctionInadmissible(
            f"cost function {cf.kind!r} is not monotone in the gap; "
            "envelope bounds are not valid for it"
        )


def lb_keogh(
    a: TimeSeries,
    env_b: EnvelopePair,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """LB_Keogh: each element's cost to the far side of b's envelope band.

    Elements inside the band contribute 0. Sound because any feasible
    alignment partner of A_i lies within [L^B_i, U^B_i], and the cost is
    monotone in the gap.
    """
    _require_monotone(cf)
    _check_envelope(a, env_b)
    av = a.values
    up = env_b.upper
    lo = env_b.lower
    d = cf.evaluate
    total = 0.0
    count = 0
    terms: list[tuple[int, str, float]] = [] if collect_terms else None
    for i in range(len(av)):
        v = av[i]
        u = up[i]
        if v > u:
            t = d(v, u)
            clause = "above"
        else:
            l = lo[i]
            if v < l:
                t = d(v, l)
                clause = "below"
            else:
                t = 0.0
                clause = "inside"
        total += t
        count += 1
        if terms is not None:
            terms.append((i + 1, clause, t))
        if cutoff is not None and total > cutoff:
            return BoundResult(
                value=total,
                abandoned=True,
                terms_evaluated=count,
                terms=tuple(terms) if terms is not None else None,
            )
    return BoundResult(
        value=total,
        terms_evaluated=count,
        terms=tuple(terms) if terms is not None else None,
    )


def lb_improved(
    a: TimeSeries,
    b: TimeSeries,
    env_b: EnvelopePair,
    w: Window,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """LB_Keogh plus a second pass of b against the envelope of a's projection.

    The projection clamps a into b's envelope band; elements of b outside the
    projection's envelope add their cost to its near edge. Both passes share
    one running sum, so the cutoff applies across them.
    """
    _require_monotone(cf)
    _check_envelope(a, env_b, w)
    av = a.values
    bv = b.values
    if len(av) != len(bv):
        raise LengthMismatch(f"series lengths differ: {len(av)} vs {len(bv)}")
    up = env_b.upper
    lo = env_b.lower
    d = cf.evaluate
    n = len(av)
    total = 0.0
    count = 0
    terms: list[tuple[int, str, float]] = [] if collect_terms else None
    proj = [0.0] * n
    for i in range(n):
        v = av[i]
        u = up[i]
        if v > u:
            t = d(v, u)
            clause = "above"
            proj[i] = u
        else:
            l = lo[i]
            if v < l:
                t = d(v, l)
                clause = "below"
                proj[i] = l
            else:
                t = 0.0
                clause = "inside"
                proj[i] = v
        total += t
        count += 1
        if terms is not None:
            terms.append((i + 1, clause, t))
        if cutoff is not None and total > cutoff:
            return BoundResult(
                value=total,
                abandoned=True,
                terms_evaluated=count,
                terms=tuple(terms) if terms is not None else None,
            )
    ww = w.w
    proj_up = _sliding(tuple(proj), ww, True)
    proj_lo = _sliding(tuple(proj), ww, False)
    for i in range(n):
        v = bv[i]
        u = proj_up[i]
        if v > u:
            t = d(v, u)
            clause = "proj_above"
        else:
            l = proj_lo[i]
            if v < l:
                t = d(v, l)
                clause = "proj_below"
            else:
                t = 0.0
                clause = "proj_inside"
        total += t
        count += 1
        if terms is not None:
            terms.append((i + 1, clause, t))
        if cutoff is not None and total > cutoff:
            return BoundResult(
                value=total,
                abandoned=True,
                terms_evaluated=count,
                terms=tuple(terms) if terms is not None else None,
            )
    return BoundResult(
        value=total,
        terms_evaluated=count,
        terms=tuple(terms) if terms is not None else None,
    )


def lb_enhanced(
    a: TimeSeries,
    b: TimeSeries,
    env_b: EnvelopePair,
    w: Window,
    k: int,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """LB_Enhanced: k band-minimum pairs at the ends, LB_Keogh in between.

    For i in 1..k the minimum cost over the left band at i and the right
    band at l-i+1 is added (every path crosses each band); elements
    k+1..l-k contribute their LB_Keogh terms. k = 0 reproduces LB_Keogh
    exactly.
    """
    _require_monotone(cf)
    _check_envelope(a, env_b, w)
    av = a.values
    bv = b.values
    if len(av) != len(bv):
        raise LengthMismatch(f"series lengths differ: {len(av)} vs {len(bv)}")
    n = len(av)
    if not isinstance(k, int) or isinstance(k, bool) or k < 0 or 2 * k > n:
        raise InvalidK(f"band depth k must satisfy 0 <= k <= l/2; got k={k!r}, l={n}")
    up = env_b.upper
    lo = env_b.lower
    d = cf.evaluate
    ww = w.w
    total = 0.0
    count = 0
    terms: list[tuple[int, str, float]] = [] if collect_terms else None
    for i in range(1, k + 1):
        left = None
        blo = max(1, i - ww)
        for r in range(blo, i + 1):
            v = d(av[r - 1], bv[i - 1])
            if left is None or v < left:
                left = v
        for c in range(blo, i):
            v = d(av[i - 1], bv[c - 1])
            if v < left:
                left = v
        ri = n - i + 1
        right = None
        bhi = min(n, ri + ww)
        for r in range(ri, bhi + 1):
            v = d(av[r - 1], bv[ri - 1])
            if right is None or v < right:
                right = v
        for c in range(ri + 1, bhi + 1):
            v = d(av[ri - 1], bv[c - 1])
            if v < right:
                right = v
        total += left + right
        count += 2
        if terms is not None:
            terms.append((i, "band_left", left))
            terms.append((ri, "band_right", right))
        if cutoff is not None and total > cutoff:
            return BoundResult(
                value=total,
                abandoned=True,
                terms_evaluated=count,
                terms=tuple(terms) if terms is not None else None,
            )
    for i in range(k, n - k):
        v = av[i]
        u = up[i]
        if v > u:
            t = d(v, u)
            clause = "above"
        else:
            l = lo[i]
            if v < l:
                t = d(v, l)
                clause = "below"
            else:
                t = 0.0
                clause = "inside"
        total += t
        count += 1
        if terms is not None:
            terms.append((i + 1, clause, t))
        if cutoff is not None and total > cutoff:
            return BoundResult(
                value=total,
                abandoned=True,
                terms_evaluated=count,
                terms=tuple(terms) if terms is not None else None,
            )
    return BoundResult(
        value=total,
        terms_evaluated=count,
        terms=tuple(terms) if terms is not None else None,
    )
