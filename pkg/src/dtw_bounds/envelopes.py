"""Warping envelopes, derived envelopes, and the projection of one series
into another's envelope.

The upper/lower envelope of a series S under window w is the sliding
maximum/minimum over [max(1, i-w), min(l, i+w)], computed in O(l) with
monotonic deques. Derived envelopes are envelopes of the envelope sequences
themselves (same w); the freeness-based bounds consume them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import LengthMismatch, TimeSeries, Window


@dataclass(frozen=True)
class EnvelopePair:
    """Upper and lower envelopes of one series under one window."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    window: Window


@dataclass(frozen=True)
class DerivedEnvelopes:
    """Envelopes of the envelopes: U^L (upper of lower) and L^U (lower of upper)."""

    upper_of_lower: tuple[float, ...]
    lower_of_upper: tuple[float, ...]
    window: Window


@dataclass(frozen=True)
class Projection:
    """The series A clamped elementwise into B's envelope band."""

    values: tuple[float, ...]


def _sliding(vals: tuple[float, ...], w: int, is_max: bool) -> list[float]:
    # Monotonic deque of indices; ties evict the older index so the most
    # recent equal value is kept.
    n = len(vals)
    out = [0.0] * n
    dq: deque[int] = deque()
    if is_max:
        for j in range(n):
            v = vals[j]
            while dq and vals[dq[-1]] <= v:
                dq.pop()
            dq.append(j)
            i = j - w
            if i >= 0:
                lo = i - w
                while dq[0] < lo:
                    dq.popleft()
                out[i] = vals[dq[0]]
    else:
        for j in range(n):
            v = vals[j]
            while dq and vals[dq[-1]] >= v:
                dq.pop()
            dq.append(j)
            i = j - w
            if i >= 0:
                lo = i - w
                while dq[0] < lo:
                    dq.popleft()
                out[i] = vals[dq[0]]
    # Tail positions whose windows are clipped at the right end.
    for i in range(max(0, n - w), n):
        lo = i - w
        while dq[0] < lo:
            dq.popleft()
        out[i] = vals[dq[0]]
    return out


def compute_envelopes(s: TimeSeries, w: Window) -> EnvelopePair:
    """Upper and lower envelopes of s under window w, in O(l).

    Exact elementwise: every envelope value is one of the input values,
    selected, not recomputed, so no floating-point drift is introduced.
    """
    vals = s.values
    ww = w.w
    return EnvelopePair(
        upper=tuple(_sliding(vals, ww, True)),
        lower=tuple(_sliding(vals, ww, False)),
        window=w,
    )


def derived_envelopes(env: EnvelopePair) -> DerivedEnvelopes:
    """Envelopes of the envelope sequences, under the same window.

    upper_of_lower is the sliding max of env.lower; lower_of_upper is the
    sliding min of env.upper.
    """
    ww = env.window.w
    return DerivedEnvelopes(
        upper_of_lower=tuple(_sliding(env.lower, ww, True)),
        lower_of_upper=tuple(_sliding(env.upper, ww, False)),
        window=env.window,
    )


def compute_projection(a: TimeSeries, env_b: EnvelopePair) -> Projection:
    """Clamp a into b's envelope band, elementwise.

    proj_i = U^B_i where A_i > U^B_i, L^B_i where A_i < L^B_i, else A_i.
    """
    av = a.values
    up = env_b.upper
    lo = env_b.lower
    if len(av) != len(up):
        raise LengthMismatch(
            f"series length {len(av)} does not match envelope length {len(up)}"
        )
    out = []
    for i in range(len(av)):
        v = av[i]
        u = up[i]
        if v > u:
            out.append(u)
        else:
            l = lo[i]
            out.append(l if v < l else v)
    return Projection(values=tuple(out))
