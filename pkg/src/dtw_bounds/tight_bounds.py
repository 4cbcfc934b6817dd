"""Projection- and freeness-refined DTW lower bounds.

These sharpen the envelope bounds by charging both series: a first pass of A
against B's envelope (plus explicit minimum-cost corner paths), then a second
pass of B against envelopes derived from A and from A's projection onto B's
band. The refinement clauses subtract a correction term, which is only sound
for costs satisfying the triangle-surplus inequality; the starred variant
avoids the subtraction and needs only gap-monotonicity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CostFunction,
    CostFunctionInadmissible,
    InvalidK,
    LengthMismatch,
    SeriesTooShort,
    TimeSeries,
    Window,
)
from .envelope_bounds import BoundResult, _check_envelope
from .envelopes import DerivedEnvelopes, EnvelopePair, _sliding

_LR_MIN_LENGTH = 7


@dataclass(frozen=True)
class FreenessFlags:
    """Per-element freeness of B's positions with respect to A's first pass.

    free_above[j] means: no element A_i inside j's window and inside the
    first-pass range received an allowance that can reach above A's derived
    lower-of-upper envelope, so charging B_j its full cost above U^A_j
    cannot double-count. free_below is the mirror. Both tuples are 0-based
    over positions 1..l.
    """

    free_above: tuple[bool, ...]
    free_below: tuple[bool, ...]


def _require_surplus(cf: CostFunction) -> None:
    if not cf.satisfies_triangle_surplus:
        raise CostFunctionInadmissible(
            f"cost function {cf.kind!r} does not satisfy the triangle-surplus "
            "inequality; subtraction-refined bounds are not valid for it"
        )


def _require_monotone(cf: CostFunction) -> None:
    if not cf.monotone_in_gap:
        raise CostFunctionInadmissible(
            f"cost function {cf.kind!r} is not monotone in the gap"
        )


def min_lr_paths(a: TimeSeries, b: TimeSeries, cf: CostFunction) -> float:
    """Minimum cost of the first three and last three path alignments.

    Both corners (1,1) and (l,l) are on every path, and within its first
    (respectively last) four cells every monotone path contains one of seven
    two-cell patterns; the minimum over those patterns is therefore a sound
    charge for the path's ends. Requires l >= 7 so the start and end claims
    cannot overlap. The candidate set deliberately ignores the warping
    window: a minimum over a superset of the feasible patterns only loosens
    the bound.
    """
    av = a.values
    bv = b.values
    if len(av) != len(bv):
        raise LengthMismatch(f"series lengths differ: {len(av)} vs {len(bv)}")
    if len(av) < _LR_MIN_LENGTH:
        raise SeriesTooShort(
            f"corner-path bounds need length >= {_LR_MIN_LENGTH}, got {len(av)}"
        )
    d = cf.evaluate
    corner = d(av[0], bv[0]) + d(av[-1], bv[-1])
    start = min(
        d(av[0], bv[1]) + d(av[0], bv[2]),
        d(av[0], bv[1]) + d(av[1], bv[2]),
        d(av[1], bv[1]) + d(av[1], bv[2]),
        d(av[1], bv[1]) + d(av[2], bv[2]),
        d(av[1], bv[1]) + d(av[2], bv[1]),
        d(av[1], bv[0]) + d(av[2], bv[1]),
        d(av[1], bv[0]) + d(av[2], bv[0]),
    )
    end = min(
        d(av[-1], bv[-2]) + d(av[-1], bv[-3]),
        d(av[-1], bv[-2]) + d(av[-2], bv[-3]),
        d(av[-2], bv[-2]) + d(av[-2], bv[-3]),
        d(av[-2], bv[-2]) + d(av[-3], bv[-3]),
        d(av[-2], bv[-2]) + d(av[-3], bv[-2]),
        d(av[-2], bv[-1]) + d(av[-3], bv[-2]),
        d(av[-2], bv[-1]) + d(av[-3], bv[-1]),
    )
    return corner + start + end


def compute_freeness(
    a: TimeSeries,
    env_b: EnvelopePair,
    derived_env_a: DerivedEnvelopes,
    w: Window,
    lo: int,
    hi: int,
) -> FreenessFlags:
    """Freeness flags for every position, quantified over first-pass range [lo, hi].

    Position j is free-above iff every i in [lo, hi] with |i - j| <= w has
    either A_i inside B's band, or A_i below the band with L^B_i <= L^{U^A}_i
    (its allowance cannot reach above A's lower-of-upper envelope); an empty
    intersection is vacuously free. free-below mirrors it with A_i above the
    band and U^B_i >= U^{L^A}_i.

    Computed in O(l) with run-length counters instead of re-scanning each
    window: a run of compatible elements ending at i certifies position
    i - w once it is longer than 2w (the full window span). The run carries
    an initial credit of 2w so positions whose windows hang off the start of
    [lo, hi] are certified by the same rule, and after the loop the final
    run certifies the tail positions it covers. This scheme is validated
    against the direct predicate in the test suite.
    """
    av = a.values
    n = len(av)
    bu = env_b.upper
    bl = env_b.lower
    if len(bu) != n or len(derived_env_a.upper_of_lower) != n:
        raise LengthMismatch("series and envelope lengths differ")
    a_ul = derived_env_a.upper_of_lower
    a_lu = derived_env_a.lower_of_upper
    ww = w.w

    if hi < lo:
        full = (True,) * n
        return FreenessFlags(free_above=full, free_below=full)

    free_above = [False] * (n + 1)
    free_below = [False] * (n + 1)
    span = 2 * ww
    c_above = span
    c_below = span
    for i in range(lo, hi + 1):
        v = av[i - 1]
        u = bu[i - 1]
        l = bl[i - 1]
        if l <= v <= u:
            c_above += 1
            c_below += 1
        else:
            if v < l:
                c_above = c_above + 1 if l <= a_lu[i - 1] else 0
                c_below = 0
            else:
                c_below = c_below + 1 if u >= a_ul[i - 1] else 0
                c_above = 0
        j = i - ww
        if j >= 1:
            if c_above > span:
                free_above[j] = True
            if c_below > span:
                free_below[j] = True
    for j in range(1, min(n, lo - ww - 1) + 1):
        free_above[j] = True
        free_below[j] = True
    for j in range(max(1, hi - c_above + ww + 1), n + 1):
        free_above[j] = True
    for j in range(max(1, hi - c_below + ww + 1), n + 1):
        free_below[j] = True
    return FreenessFlags(
        free_above=tuple(free_above[1:]),
        free_below=tuple(free_below[1:]),
    )


def _projection_pass(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    w: Window,
    cf: CostFunction,
    lo: int,
    hi: int,
    base: float,
    base_terms: list[tuple[int, str, float]] | None,
    cutoff: float | None,
    collect_terms: bool,
) -> BoundResult:
    """Shared engine for the projection-refined bounds.

    First pass: A against B's envelope over [lo, hi], recording the
    full-range projection of A into B's band (the second pass's envelopes
    need projection values outside [lo, hi] whenever the window crosses the
    range boundary). Second pass: B over [lo, hi] against the envelopes of
    the projection, with a subtraction refinement where the projection
    envelope lies strictly beyond A's own envelope.
    """
    av = a.values
    bv = b.values
    n = len(av)
    bu = env_b.upper
    bl = env_b.lower
    au = env_a.upper
    al = env_a.lower
    d = cf.evaluate
    total = base
    count = 0
    terms = base_terms if collect_terms else None

    proj = [0.0] * n
    for i in range(n):
        v = av[i]
        u = bu[i]
        if v > u:
            proj[i] = u
            t = d(v, u)
            clause = "above"
        else:
            l = bl[i]
            if v < l:
                proj[i] = l
                t = d(v, l)
                clause = "below"
            else:
                proj[i] = v
                t = 0.0
                clause = "inside"
        if lo - 1 <= i <= hi - 1:
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
    for i in range(lo - 1, hi):
        v = bv[i]
        pu = proj_up[i]
        if v > pu:
            ua = au[i]
            if pu > ua:
                t = d(v, ua) - d(pu, ua)
                clause = "refine_above"
            else:
                t = d(v, pu)
                clause = "proj_above"
        else:
            pl = proj_lo[i]
            if v < pl:
                la = al[i]
                if pl < la:
                    t = d(v, la) - d(pl, la)
                    clause = "refine_below"
                else:
                    t = d(v, pl)
                    clause = "proj_below"
            else:
                t = 0.0
                clause = "none"
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


def lb_petitjean(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    w: Window,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """Corner paths + bridged LB_Keogh + projection-refined second pass.

    Requires a triangle-surplus cost and l >= 7. The tightest bound of the
    family; costs roughly three linear passes plus two envelope builds.
    """
    _require_surplus(cf)
    _check_envelope(a, env_b, w)
    _check_envelope(b, env_a, w)
    n = len(a.values)
    if len(b.values) != n:
        raise LengthMismatch(f"series lengths differ: {n} vs {len(b.values)}")
    if n < _LR_MIN_LENGTH:
        raise SeriesTooShort(
            f"corner-path bounds need length >= {_LR_MIN_LENGTH}, got {n}"
        )
    base = min_lr_paths(a, b, cf)
    base_terms: list[tuple[int, str, float]] | None = None
    if collect_terms:
        base_terms = _lr_terms(a, b, cf, base)
    return _projection_pass(
        a, b, env_a, env_b, w, cf, 4, n - 3, base, base_terms, cutoff, collect_terms
    )


def lb_petitjean_nolr(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    w: Window,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """The projection-refined bound with both passes over the full range.

    No corner-path term and no minimum length; dominates LB_Improved
    elementwise for triangle-surplus costs.
    """
    _require_surplus(cf)
    _check_envelope(a, env_b, w)
    _check_envelope(b, env_a, w)
    n = len(a.values)
    if len(b.values) != n:
        raise LengthMismatch(f"series lengths differ: {n} vs {len(b.values)}")
    return _projection_pass(
        a, b, env_a, env_b, w, cf, 1, n, 0.0, [] if collect_terms else None,
        cutoff, collect_terms
    )


def _lr_terms(
    a: TimeSeries, b: TimeSeries, cf: CostFunction, base: float
) -> list[tuple[int, str, float]]:
    # Attribute the corner-path value to the two endpoints for dump purposes.
    d = cf.evaluate
    first = d(a.values[0], b.values[0])
    last = base - first
    return [(1, "lr_start", first), (len(a.values), "lr_end", last)]


def _freeness_pass(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    derived_env_a: DerivedEnvelopes,
    derived_env_b: DerivedEnvelopes,
    w: Window,
    cf: CostFunction,
    lo: int,
    hi: int,
    base: float,
    base_terms: list[tuple[int, str, float]] | None,
    star: bool,
    cutoff: float | None,
    collect_terms: bool,
) -> BoundResult:
    """Shared engine for the freeness-refined bounds.

    First pass: A against B's envelope over [lo, hi]. Second pass: where a
    position of B is free, its full cost beyond A's envelope is added;
    where it is not, a refinement against B's derived envelopes applies
    (with subtraction, or the direct cost in the starred form).
    """
    av = a.values
    bv = b.values
    bu = env_b.upper
    bl = env_b.lower
    au = env_a.upper
    al = env_a.lower
    b_ul = derived_env_b.upper_of_lower
    b_lu = derived_env_b.lower_of_upper
    d = cf.evaluate
    flags = compute_freeness(a, env_b, derived_env_a, w, lo, hi)
    f_above = flags.free_above
    f_below = flags.free_below
    total = base
    count = 0
    terms = base_terms if collect_terms else None

    for i in range(lo - 1, hi):
        v = av[i]
        u = bu[i]
        if v > u:
            t = d(v, u)
            clause = "above"
        else:
            l = bl[i]
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
    for i in range(lo - 1, hi):
        v = bv[i]
        t = 0.0
        clause = "none"
        fired = False
        if f_above[i]:
            ua = au[i]
            if v > ua:
                t = d(v, ua)
                clause = "free_above"
                fired = True
        elif v > b_ul[i]:
            ua = au[i]
            if b_ul[i] > ua:
                if star:
                    t = d(v, b_ul[i])
                    clause = "star_above"
                else:
                    t = d(v, ua) - d(b_ul[i], ua)
                    clause = "refine_above"
                fired = True
        # The above and below clause guards are mutually exclusive (they
        # would force L^A > U^A), so checking below only when no above
        # clause fired loses nothing; the explicit flag keeps zero-valued
        # fired clauses from falling through under degenerate costs.
        if not fired:
            if f_below[i]:
                la = al[i]
                if v < la:
                    t = d(v, la)
                    clause = "free_below"
            elif v < b_lu[i]:
                la = al[i]
                if b_lu[i] < la:
                    if star:
                        t = d(v, b_lu[i])
                        clause = "star_below"
                    else:
                        t = d(v, la) - d(b_lu[i], la)
                        clause = "refine_below"
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


def _check_webb_inputs(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    derived_env_a: DerivedEnvelopes,
    derived_env_b: DerivedEnvelopes,
    w: Window,
) -> int:
    _check_envelope(a, env_b, w)
    _check_envelope(b, env_a, w)
    n = len(a.values)
    if len(b.values) != n:
        raise LengthMismatch(f"series lengths differ: {n} vs {len(b.values)}")
    if len(derived_env_a.upper_of_lower) != n or len(derived_env_b.upper_of_lower) != n:
        raise LengthMismatch("derived envelope length does not match the series")
    if derived_env_a.window.w != w.w or derived_env_b.window.w != w.w:
        raise ValueError("derived envelopes were built with a different window")
    return n


def lb_webb(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    derived_env_a: DerivedEnvelopes,
    derived_env_b: DerivedEnvelopes,
    w: Window,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """Corner paths + bridged LB_Keogh + freeness-refined second pass.

    Replaces the per-pair projection envelopes of lb_petitjean with
    precomputable derived envelopes, trading a little tightness for a much
    cheaper second pass. Requires a triangle-surplus cost and l >= 7.
    """
    _require_surplus(cf)
    n = _check_webb_inputs(a, b, env_a, env_b, derived_env_a, derived_env_b, w)
    if n < _LR_MIN_LENGTH:
        raise SeriesTooShort(
            f"corner-path bounds need length >= {_LR_MIN_LENGTH}, got {n}"
        )
    base = min_lr_paths(a, b, cf)
    base_terms = _lr_terms(a, b, cf, base) if collect_terms else None
    return _freeness_pass(
        a, b, env_a, env_b, derived_env_a, derived_env_b, w, cf,
        4, n - 3, base, base_terms, False, cutoff, collect_terms,
    )


def lb_webb_nolr(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    derived_env_a: DerivedEnvelopes,
    derived_env_b: DerivedEnvelopes,
    w: Window,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """The freeness-refined bound with both passes over the full range."""
    _require_surplus(cf)
    n = _check_webb_inputs(a, b, env_a, env_b, derived_env_a, derived_env_b, w)
    return _freeness_pass(
        a, b, env_a, env_b, derived_env_a, derived_env_b, w, cf,
        1, n, 0.0, [] if collect_terms else None, False, cutoff, collect_terms,
    )


def lb_webb_star(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    derived_env_a: DerivedEnvelopes,
    derived_env_b: DerivedEnvelopes,
    w: Window,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """lb_webb without the subtraction refinement.

    The non-free clauses charge B_i directly to B's derived envelope
    instead of subtracting a correction, so only gap-monotonicity is
    required of the cost. Coincides with lb_webb when the cost is the
    absolute difference.
    """
    _require_monotone(cf)
    n = _check_webb_inputs(a, b, env_a, env_b, derived_env_a, derived_env_b, w)
    if n < _LR_MIN_LENGTH:
        raise SeriesTooShort(
            f"corner-path bounds need length >= {_LR_MIN_LENGTH}, got {n}"
        )
    base = min_lr_paths(a, b, cf)
    base_terms = _lr_terms(a, b, cf, base) if collect_terms else None
    return _freeness_pass(
        a, b, env_a, env_b, derived_env_a, derived_env_b, w, cf,
        4, n - 3, base, base_terms, True, cutoff, collect_terms,
    )


def lb_webb_enhanced(
    a: TimeSeries,
    b: TimeSeries,
    env_a: EnvelopePair,
    env_b: EnvelopePair,
    derived_env_a: DerivedEnvelopes,
    derived_env_b: DerivedEnvelopes,
    w: Window,
    k: int,
    cf: CostFunction,
    cutoff: float | None = None,
    *,
    collect_terms: bool = False,
) -> BoundResult:
    """k band-minimum pairs at the ends, the freeness machinery in between.

    The first-pass, second-pass, and freeness quantifier ranges are all
    [k+1, l-k], matching the band depth, so no alignment is charged twice.
    Dominates lb_enhanced at the same k for triangle-surplus costs.
    """
    _require_surplus(cf)
    n = _check_webb_inputs(a, b, env_a, env_b, derived_env_a, derived_env_b, w)
    if not isinstance(k, int) or isinstance(k, bool) or k < 0 or 2 * k > n:
        raise InvalidK(f"band depth k must satisfy 0 <= k <= l/2; got k={k!r}, l={n}")
    av = a.values
    bv = b.values
    d = cf.evaluate
    ww = w.w
    base = 0.0
    base_terms: list[tuple[int, str, float]] | None = [] if collect_terms else None
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
        base += left + right
        if base_terms is not None:
            base_terms.append((i, "band_left", left))
            base_terms.append((ri, "band_right", right))
        if cutoff is not None and base > cutoff:
            return BoundResult(
                value=base,
                abandoned=True,
                terms_evaluated=2 * i,
                terms=tuple(base_terms) if base_terms is not None else None,
            )
    return _freeness_pass(
        a, b, env_a, env_b, derived_env_a, derived_env_b, w, cf,
        k + 1, n - k, base, base_terms, False, cutoff, collect_terms,
    )
