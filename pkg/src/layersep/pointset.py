"""Immutable labeled point sets and multi-layer stacks.

A :class:`LabeledPointSet` holds the pooled representation vectors of one
encoder layer for every example of a binary-classification dataset, one row
per example. A :class:`LayerStack` holds one point set per layer, all sharing
a single label vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyClassError,
    InvalidLabelError,
    NonFiniteValueError,
    TooFewPointsError,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class LabeledPointSet:
    """n points in d dimensions with binary labels.

    Use :func:`build_point_set` to construct; it validates and freezes the
    arrays. ``points`` is float64 regardless of the ingested precision so
    that scatter-trace accumulation stays accurate at d around 768.
    """

    points: np.ndarray  # (n, d) float64, read-only
    labels: np.ndarray  # (n,) uint8, read-only

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def class_counts(self) -> tuple[int, int]:
        """Number of points labeled 0 and labeled 1."""
        n1 = int(self.labels.sum())
        return self.n - n1, n1


def build_point_set(points, labels) -> LabeledPointSet:
    """Validate and construct a :class:`LabeledPointSet`.

    Parameters
    ----------
    points : array-like, shape (n, d)
        Real coordinates; rejected if any value is NaN or infinite.
    labels : array-like, shape (n,)
        Class labels, each 0 or 1.

    Raises
    ------
    DimensionMismatchError, NonFiniteValueError, InvalidLabelError,
    TooFewPointsError
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise DimensionMismatchError(
            f"points must be a 2-d matrix, got ndim={pts.ndim}"
        )
    lab = np.asarray(labels)
    if lab.ndim != 1:
        raise DimensionMismatchError(
            f"labels must be a 1-d vector, got ndim={lab.ndim}"
        )
    if pts.shape[0] != lab.shape[0]:
        raise DimensionMismatchError(
            f"{pts.shape[0]} point rows but {lab.shape[0]} labels"
        )
    if pts.shape[0] < 2:
        raise TooFewPointsError(f"need at least 2 points, got {pts.shape[0]}")
    if pts.shape[1] < 1:
        raise DimensionMismatchError("points must have at least 1 dimension")
    if not np.isfinite(pts).all():
        bad = int(np.flatnonzero(~np.isfinite(pts).all(axis=1))[0])
        raise NonFiniteValueError(f"non-finite coordinate in row {bad}")
    if lab.dtype.kind == "f":
        if not np.isfinite(lab).all() or (lab != np.round(lab)).any():
            raise InvalidLabelError("labels must be integers 0 or 1")
    elif lab.dtype.kind not in "iub":
        raise InvalidLabelError(f"labels have non-integer dtype {lab.dtype}")
    lab64 = lab.astype(np.int64)
    if ((lab64 != 0) & (lab64 != 1)).any():
        bad = int(np.flatnonzero((lab64 != 0) & (lab64 != 1))[0])
        raise InvalidLabelError(f"label {lab64[bad]} at row {bad} is not 0 or 1")
    # copy if the caller handed us views of its own buffers
    if pts.base is not None or pts is points:
        pts = pts.copy()
    return LabeledPointSet(_frozen(pts), _frozen(lab64.astype(np.uint8)))


@dataclass(frozen=True)
class LayerStack:
    """Ordered per-layer point sets sharing one label vector.

    Construct with :func:`build_layer_stack`. Layer dimensionalities may
    differ between layers; n and the labels may not.
    """

    layers: tuple[LabeledPointSet, ...]
    layer_indices: tuple[int, ...]
    dataset_name: str = ""

    @property
    def n(self) -> int:
        return self.layers[0].n

    @property
    def layer_count(self) -> int:
        return len(self.layers)

    @property
    def labels(self) -> np.ndarray:
        return self.layers[0].labels


def build_layer_stack(
    layers: Sequence[LabeledPointSet],
    layer_indices: Sequence[int] | None = None,
    dataset_name: str = "",
) -> LayerStack:
    """Validate and construct a :class:`LayerStack`.

    ``layer_indices`` defaults to 1..L. Indices must be positive and
    strictly ascending; all layers must share n and the exact label vector.
    """
    layers = tuple(layers)
    if not layers:
        raise DimensionMismatchError("a layer stack needs at least one layer")
    if layer_indices is None:
        indices = tuple(range(1, len(layers) + 1))
    else:
        indices = tuple(int(i) for i in layer_indices)
    if len(indices) != len(layers):
        raise DimensionMismatchError(
            f"{len(layers)} layers but {len(indices)} layer indices"
        )
    if indices[0] < 1 or any(a >= b for a, b in zip(indices, indices[1:])):
        raise DimensionMismatchError(
            f"layer indices must be positive and strictly ascending: {indices}"
        )
    first = layers[0]
    for idx, layer in zip(indices, layers):
        if layer.n != first.n:
            raise DimensionMismatchError(
                f"layer {idx} has n={layer.n}, expected {first.n}"
            )
        if not np.array_equal(layer.labels, first.labels):
            raise DimensionMismatchError(f"layer {idx} labels differ from layer {indices[0]}")
    return LayerStack(layers, indices, dataset_name)


@dataclass(frozen=True)
class ClassStatistics:
    """Per-class and global arithmetic means with class counts."""

    class_means: np.ndarray  # (2, d): row 0 for label 0, row 1 for label 1
    global_mean: np.ndarray  # (d,)
    class_counts: tuple[int, int]


def class_statistics(point_set: LabeledPointSet) -> ClassStatistics:
    """Exact per-class and global means of a point set.

    Raises
    ------
    EmptyClassError
        If either class has no members.
    """
    n0, n1 = point_set.class_counts()
    if n0 == 0 or n1 == 0:
        missing = 0 if n0 == 0 else 1
        raise EmptyClassError(f"class {missing} has no members")
    mask1 = point_set.labels.astype(bool)
    m0 = point_set.points[~mask1].mean(axis=0)
    m1 = point_set.points[mask1].mean(axis=0)
    m = point_set.points.mean(axis=0)
    return ClassStatistics(
        _frozen(np.stack([m0, m1])), _frozen(m), (n0, n1)
    )
