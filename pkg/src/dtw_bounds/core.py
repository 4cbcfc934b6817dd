"""Series and cost-function primitives shared by the DTW engine and the bounds.

Everything downstream assumes equal-length, finite, univariate float series.
Cost functions carry capability flags because the tighter bounds are only
admissible for certain classes of pairwise costs; the flags are trusted, so
a custom cost must declare them honestly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence


class DtwBoundsError(Exception):
    """Base class for errors raised by this package."""


class LengthMismatch(DtwBoundsError):
    """Two series that must share a length do not."""


class NonFiniteValue(DtwBoundsError):
    """A series element is NaN or infinite."""

    def __init__(self, series_id: str | None, index: int):
        self.series_id = series_id
        self.index = index
        where = f"series {series_id!r}" if series_id is not None else "series"
        super().__init__(f"non-finite value in {where} at position {index}")


class CostFunctionInadmissible(DtwBoundsError):
    """The cost function lacks a capability flag a bound requires."""


class SeriesTooShort(DtwBoundsError):
    """The series is shorter than an algorithm's minimum length."""


class InvalidK(DtwBoundsError):
    """A band depth k outside 0 <= k <= len/2."""


class EmptyTrainingSet(DtwBoundsError):
    """A search was asked to run against zero candidates."""


class WindowZeroRejected(DtwBoundsError):
    """A tightness run was configured with w = 0."""


class InvalidFraction(DtwBoundsError):
    """A fractional window outside (0, 1]."""


class ParseError(DtwBoundsError):
    """A dataset file line could not be parsed."""

    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"{path}:{line_number}: {reason}")


class RaggedRow(ParseError):
    """A dataset row whose length differs from the first row's."""


@dataclass(frozen=True)
class TimeSeries:
    """An immutable univariate series of finite floats.

    Parameters
    ----------
    values : sequence of float
        The observations. Coerced to Python floats; must all be finite.
    id : str, optional
        A caller-meaningful identifier carried through search reports.
    """

    values: tuple[float, ...]
    id: str | None = None

    def __init__(self, values: Iterable[float], id: str | None = None):
        vals = tuple(float(v) for v in values)
        for i, v in enumerate(vals):
            if not math.isfinite(v):
                raise NonFiniteValue(id, i + 1)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "id", id)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Window:
    """A Sakoe-Chiba warping window half-width w >= 0.

    Cell (i, j) is feasible iff |i - j| <= w.
    """

    w: int

    def __post_init__(self):
        if not isinstance(self.w, int) or isinstance(self.w, bool) or self.w < 0:
            raise ValueError(f"window half-width must be an integer >= 0, got {self.w!r}")


@dataclass(frozen=True)
class CostFunction:
    """A pairwise element cost with capability flags.

    Parameters
    ----------
    kind : str
        A short tag ("squared", "abs", or "custom").
    evaluate : callable
        delta(x, y) -> float; must be symmetric and zero at x == y.
    satisfies_triangle_surplus : bool
        True iff for all a <= x <= y <= b (or the mirrored order),
        delta(a, b) >= delta(a, y) + delta(b, x) - delta(x, y).
        Required by the projection- and freeness-refined bounds.
    monotone_in_gap : bool
        True iff delta(x, y) depends only on |x - y| and is nondecreasing
        in it. Required by the envelope bounds.
    """

    kind: str
    evaluate: Callable[[float, float], float] = field(compare=False)
    satisfies_triangle_surplus: bool
    monotone_in_gap: bool


def _squared(x: float, y: float) -> float:
    d = x - y
    return d * d


def _absolute(x: float, y: float) -> float:
    return abs(x - y)


SQUARED = CostFunction(
    kind="squared",
    evaluate=_squared,
    satisfies_triangle_surplus=True,
    monotone_in_gap=True,
)

ABSOLUTE = CostFunction(
    kind="abs",
    evaluate=_absolute,
    satisfies_triangle_surplus=True,
    monotone_in_gap=True,
)


def custom_cost(
    evaluate: Callable[[float, float], float],
    *,
    satisfies_triangle_surplus: bool,
    monotone_in_gap: bool,
) -> CostFunction:
    """Wrap a user cost; capability flags must be stated explicitly."""
    return CostFunction(
        kind="custom",
        evaluate=evaluate,
        satisfies_triangle_surplus=satisfies_triangle_surplus,
        monotone_in_gap=monotone_in_gap,
    )


def delta(cf: CostFunction, x: float, y: float) -> float:
    """Evaluate the pairwise cost delta(x, y)."""
    return cf.evaluate(x, y)


def validate_pair(a: TimeSeries, b: TimeSeries) -> None:
    """Check that a and b are comparable: equal length, all values finite.

    Raises LengthMismatch or NonFiniteValue. TimeSeries enforces finiteness
    at construction, but the scan is repeated here so the check stands on
    its own for values smuggled in by other means.
    """
    if len(a.values) != len(b.values):
        raise LengthMismatch(
            f"series lengths differ: {len(a.values)} vs {len(b.values)}"
        )
    for s in (a, b):
        vals = s.values
        if not all(map(math.isfinite, vals)):
            for i, v in enumerate(vals):
                if not math.isfinite(v):
                    raise NonFiniteValue(s.id, i + 1)


def as_series(values: Sequence[float] | TimeSeries, id: str | None = None) -> TimeSeries:
    """Coerce a raw sequence to a TimeSeries; pass TimeSeries through."""
    if isinstance(values, TimeSeries):
        return values
    return TimeSeries(values, id=id)
