"""Per-layer separability sweep, truncation recommendation, accuracy
correlation and dev-set subsampling.

The sweep evaluates one measure on every layer of a stack; the
recommendation is the argmax over layers, preferring the smallest layer on
ties (the cheaper truncated model). Correlation against an externally
measured per-layer accuracy curve lets a user check which measure tracks
accuracy best on their task.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConstantSeriesError,
    CurveFormatError,
    EmptyClassAfterSamplingError,
    InvalidFractionError,
    LayerMismatchError,
    LayerSepError,
    SentinelPresentError,
)
from .measures import Measure, MeasureValue, csm, hm, si
from .neighbors import all_nearest
from .pointset import LabeledPointSet, LayerStack, build_point_set, build_layer_stack

_SAMPLE_RETRIES = 16


@dataclass(frozen=True)
class SampleInfo:
    """How a point set was subsampled before measuring."""

    fraction: float
    seed: int
    sampled_n: int


@dataclass(frozen=True)
class SeparabilityReport:
    """Per-layer values of one measure, in ascending layer order."""

    dataset_name: str
    measure: Measure
    per_layer: tuple[tuple[int, MeasureValue], ...]
    sample_info: SampleInfo | None = None

    def layer_indices(self) -> tuple[int, ...]:
        return tuple(idx for idx, _ in self.per_layer)

    def values(self) -> tuple[float, ...]:
        return tuple(mv.value for _, mv in self.per_layer)


@dataclass(frozen=True)
class Recommendation:
    """Argmax layer of a report, with tie information."""

    chosen_layer: int
    winning_value: float
    ties: tuple[int, ...]


@dataclass(frozen=True)
class CorrelationReport:
    """Pearson coefficients of one or more measures against one curve."""

    dataset_name: str
    units: str
    entries: tuple[tuple[Measure, float], ...]


@dataclass(frozen=True)
class AccuracyCurve:
    """Externally measured per-layer test accuracy."""

    per_layer: tuple[tuple[int, float], ...]
    units: str  # "fraction" or "percent"

    def layer_indices(self) -> tuple[int, ...]:
        return tuple(idx for idx, _ in self.per_layer)


def build_accuracy_curve(
    per_layer: Iterable[tuple[int, float]], units: str
) -> AccuracyCurve:
    entries = tuple((int(i), float(a)) for i, a in per_layer)
    if units not in ("fraction", "percent"):
        raise CurveFormatError(f"unknown accuracy units {units!r}")
    if not entries:
        raise CurveFormatError("accuracy curve has no rows")
    hi = 1.0 if units == "fraction" else 100.0
    for idx, acc in entries:
        if not 0.0 <= acc <= hi:
            raise CurveFormatError(
                f"accuracy {acc} at layer {idx} outside [0, {hi:g}] for {units}"
            )
    indices = [i for i, _ in entries]
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise CurveFormatError(f"layer indices not strictly ascending: {indices}")
    return AccuracyCurve(entries, units)


def read_accuracy_curve(text: str, units: str) -> AccuracyCurve:
    """Parse a two-column ``layer,accuracy`` CSV into a curve."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows or [c.strip() for c in rows[0]] != ["layer", "accuracy"]:
        raise CurveFormatError("expected header line 'layer,accuracy'")
    entries = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise CurveFormatError(f"line {lineno}: expected 2 columns, got {len(row)}")
        try:
            entries.append((int(row[0]), float(row[1])))
        except ValueError as exc:
            raise CurveFormatError(f"line {lineno}: {exc}") from exc
    return build_accuracy_curve(entries, units)


def _measure_layer(
    layer: LabeledPointSet, measures: Sequence[Measure], threads: int
) -> dict[Measure, MeasureValue]:
    out: dict[Measure, MeasureValue] = {}
    if Measure.CSM in measures:
        out[Measure.CSM] = csm(layer)
    if Measure.SI in measures or Measure.HM in measures:
        nb = all_nearest(layer, threads=threads)  # shared by si and hm
        if Measure.SI in measures:
            out[Measure.SI] = si(layer, nb)
        if Measure.HM in measures:
            out[Measure.HM] = hm(layer, nb)
    return out


def sweep_all(
    stack: LayerStack,
    measures: Sequence[Measure],
    threads: int = 0,
    sample_info: SampleInfo | None = None,
) -> dict[Measure, SeparabilityReport]:
    """Evaluate several measures over every layer, one pass per layer.

    Nearest neighbors are computed once per layer and shared between the
    neighbor-based measures. Per-layer failures are re-raised with the
    offending layer index prepended.
    """
    rows: dict[Measure, list[tuple[int, MeasureValue]]] = {m: [] for m in measures}
    for idx, layer in zip(stack.layer_indices, stack.layers):
        try:
            values = _measure_layer(layer, measures, threads)
        except LayerSepError as exc:
            raise type(exc)(f"layer {idx}: {exc}") from exc
        for m in measures:
            rows[m].append((idx, values[m]))
    return {
        m: SeparabilityReport(stack.dataset_name, m, tuple(rows[m]), sample_info)
        for m in measures
    }


def sweep(
    stack: LayerStack,
    measure: Measure,
    threads: int = 0,
    sample_info: SampleInfo | None = None,
) -> SeparabilityReport:
    """Evaluate one measure on every layer of the stack."""
    return sweep_all(stack, [measure], threads, sample_info)[measure]


def recommend(report: SeparabilityReport) -> Recommendation:
    """Pick the layer with the maximum value; prefer the smallest on ties.

    An infinite sentinel beats every finite value; several infinities tie.
    """
    winning = max(report.values())
    ties = tuple(idx for idx, mv in report.per_layer if mv.value == winning)
    return Recommendation(min(ties), winning, ties)


def correlate(report: SeparabilityReport, acc: AccuracyCurve) -> float:
    """Sample Pearson correlation between a report and an accuracy curve.

    Raises
    ------
    LayerMismatchError
        If the two series cover different layer indices.
    SentinelPresentError
        If the report contains an infinite sentinel; substituting any
        finite stand-in would manufacture correlation.
    ConstantSeriesError
        If either series is constant, or there are fewer than two layers.
    """
    if report.layer_indices() != acc.layer_indices():
        raise LayerMismatchError(
            f"report layers {report.layer_indices()} != "
            f"accuracy layers {acc.layer_indices()}"
        )
    x = np.asarray(report.values())
    y = np.asarray([a for _, a in acc.per_layer])
    if x.size < 2:
        raise ConstantSeriesError("need at least 2 layers to correlate")
    if np.isinf(x).any():
        raise SentinelPresentError(
            "report contains an infinite sentinel; correlation is undefined"
        )
    if (x == x[0]).all() or (y == y[0]).all():
        raise ConstantSeriesError("a constant series has no correlation")
    dx = x - x.mean()
    dy = y - y.mean()
    r = float((dx * dy).sum() / math.sqrt((dx**2).sum() * (dy**2).sum()))
    return max(-1.0, min(1.0, r))


def _draw_indices(labels: np.ndarray, fraction: float, seed: int) -> np.ndarray:
    """Deterministic class-preserving row draw shared by the samplers."""
    if not 0.0 < fraction <= 1.0:
        raise InvalidFractionError(f"fraction {fraction} outside (0, 1]")
    n = labels.shape[0]
    # round before ceil so 0.1 * 100 keeps 10 rows, not 11
    k = min(n, math.ceil(round(fraction * n, 9)))
    for attempt in range(_SAMPLE_RETRIES + 1):
        rng = np.random.default_rng(seed + attempt)
        idx = rng.choice(n, size=k, replace=False)
        drawn = labels[idx]
        if drawn.min() == 0 and drawn.max() == 1:
            return idx
    raise EmptyClassAfterSamplingError(
        f"no draw of {k} rows kept both classes after {_SAMPLE_RETRIES} retries"
    )


def subsample(
    point_set: LabeledPointSet, fraction: float, seed: int
) -> LabeledPointSet:
    """Uniform sample without replacement of ceil(fraction * n) rows.

    Deterministic for a given seed. If a draw loses a class, it is redrawn
    with seed+1 and so on, up to 16 retries.
    """
    idx = _draw_indices(point_set.labels, fraction, seed)
    return build_point_set(point_set.points[idx], point_set.labels[idx])


def subsample_stack(stack: LayerStack, fraction: float, seed: int) -> LayerStack:
    """Subsample a whole stack with one shared row draw across layers."""
    idx = _draw_indices(stack.labels, fraction, seed)
    layers = [
        build_point_set(layer.points[idx], layer.labels[idx])
        for layer in stack.layers
    ]
    return build_layer_stack(layers, stack.layer_indices, stack.dataset_name)
