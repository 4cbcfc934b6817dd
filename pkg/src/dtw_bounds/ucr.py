"""Loading and writing UCR-style dataset splits.

A split file holds one series per line: an integer class label followed by
l values, comma- or tab-separated (detected from the first data line).
All rows in a dataset must share one length.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .core import (
    InvalidFraction,
    LengthMismatch,
    NonFiniteValue,
    ParseError,
    RaggedRow,
    TimeSeries,
    Window,
)


@dataclass(frozen=True)
class LabeledSeries:
    label: int
    series: TimeSeries


@dataclass(frozen=True)
class Dataset:
    name: str
    train: tuple[LabeledSeries, ...]
    test: tuple[LabeledSeries, ...]
    series_length: int
    recommended_window: int | None = None


@dataclass(frozen=True)
class Absolute:
    """A window given directly as a half-width in elements."""

    n: int


@dataclass(frozen=True)
class Fraction:
    """A window given as a fraction of the series length, in (0, 1]."""

    f: float


WindowSpec = Absolute | Fraction


def _parse_label(tok: str, path: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        f = float(tok)
    except ValueError:
        raise ParseError(path, lineno, f"label {tok!r} is not a number") from None
    if f.is_integer():
        return int(f)
    raise ParseError(path, lineno, f"label {tok!r} is not an integer")


def parse_split_file(path: str, role: str = "row", znorm: bool = False) -> list[LabeledSeries]:
    """Parse one split file into labeled series.

    Raises ParseError for malformed lines, RaggedRow when a row's length
    differs from the first row's, and NonFiniteValue for NaN/inf values.
    """
    rows: list[LabeledSeries] = []
    length: int | None = None
    delimiter: str | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if delimiter is None:
                delimiter = "\t" if "\t" in line else ","
            toks = [t for t in line.split(delimiter)]
            if len(toks) < 2:
                raise ParseError(
                    path, lineno, "expected a label and at least one value"
                )
            label = _parse_label(toks[0].strip(), path, lineno)
            try:
                values = [float(t) for t in toks[1:]]
            except ValueError as exc:
                raise ParseError(path, lineno, str(exc)) from None
            if length is None:
                length = len(values)
            elif len(values) != length:
                raise RaggedRow(
                    path,
                    lineno,
                    f"row has {len(values)} values, expected {length}",
                )
            try:
                series = TimeSeries(values, id=f"{role}-{len(rows)}")
            except NonFiniteValue as exc:
                raise NonFiniteValue(f"{path}:{lineno}", exc.index) from None
            if znorm:
                series = znormalize(series)
            rows.append(LabeledSeries(label=label, series=series))
    if not rows:
        raise ParseError(path, 1, "file contains no data rows")
    return rows


def _dataset_name(train_path: str) -> str:
    base = os.path.basename(train_path)
    for ext in (".tsv", ".csv", ".txt"):
        if base.endswith(ext):
            base = base[: -len(ext)]
            break
    for suffix in ("_TRAIN", "_TEST", "-train", "-test"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
            break
    return base


def load_dataset(
    train_path: str,
    test_path: str,
    *,
    name: str | None = None,
    znorm: bool = False,
    sidecar: str | None = None,
) -> Dataset:
    """Load a train/test split pair into a Dataset.

    The dataset name defaults to the train file's stem with a _TRAIN suffix
    stripped. If a sidecar window file is given, recommended_window is
    looked up by dataset name.
    """
    train = parse_split_file(train_path, role="train", znorm=znorm)
    test = parse_split_file(test_path, role="test", znorm=znorm)
    length = len(train[0].series.values)
    if len(test[0].series.values) != length:
        raise LengthMismatch(
            f"train rows have length {length}, test rows have "
            f"length {len(test[0].series.values)}"
        )
    ds_name = name if name is not None else _dataset_name(train_path)
    rec: int | None = None
    if sidecar is not None:
        rec = load_window_sidecar(sidecar).get(ds_name)
    return Dataset(
        name=ds_name,
        train=tuple(train),
        test=tuple(test),
        series_length=length,
        recommended_window=rec,
    )


def dump_split_file(rows: list[LabeledSeries], path: str, delimiter: str = ",") -> None:
    """Write labeled series in the split format; round-trips through the parser."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            toks = [str(row.label)]
            toks.extend(repr(v) for v in row.series.values)
            fh.write(delimiter.join(toks) + "\n")


def load_window_sidecar(path: str) -> dict[str, int]:
    """Read a two-column CSV of dataset_name,window into a dict."""
    out: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ParseError(path, lineno, "expected dataset_name,window")
            name = parts[0].strip()
            if name.lower() == "dataset_name":
                continue
            try:
                out[name] = int(parts[1])
            except ValueError:
                raise ParseError(
                    path, lineno, f"window {parts[1]!r} is not an integer"
                ) from None
    return out


def znormalize(series: TimeSeries) -> TimeSeries:
    """Standardise to zero mean and unit variance.

    A constant series has no scale; it maps to all zeros.
    """
    vals = series.values
    n = len(vals)
    mean = sum(vals) / n
    var = sum((v - mean) ** 2 for v in vals) / n
    if var == 0.0:
        return TimeSeries([0.0] * n, id=series.id)
    sd = math.sqrt(var)
    return TimeSeries([(v - mean) / sd for v in vals], id=series.id)


def resolve_window(spec: WindowSpec, series_length: int) -> Window:
    """Turn a window specification into a concrete half-width.

    Fractions resolve as ceil(f * l) so any positive fraction yields at
    least 1; the product is first snapped to the nearest integer at 1e-9
    relative so binary-float artefacts (0.2 * 100 = 20.000000000000004)
    do not bump the ceiling.
    """
    if series_length < 1:
        raise ValueError(f"series length must be >= 1, got {series_length}")
    if isinstance(spec, Absolute):
        if spec.n < 0:
            raise ValueError(f"absolute window must be >= 0, got {spec.n}")
        return Window(int(spec.n))
    if isinstance(spec, Fraction):
        f = spec.f
        if not (0.0 < f <= 1.0):
            raise InvalidFraction(f"fractional window must be in (0, 1], got {f!r}")
        prod = f * series_length
        nearest = round(prod)
        if nearest >= 1 and abs(prod - nearest) <= 1e-9 * max(1.0, abs(prod)):
            return Window(int(nearest))
        return Window(int(math.ceil(prod)))
    raise TypeError(f"expected Absolute or Fraction, got {type(spec).__name__}")
