"""Class-separability measures on a labeled point set.

Three measures, all increasing with separability:

* ``csm``: ratio of the between-class scatter trace to the within-class
  scatter trace. Traces are accumulated as weighted sums of squared
  Euclidean norms; the d x d scatter matrices are never formed.
* ``si``: fraction of points whose unconstrained nearest neighbor carries
  the same label.
* ``hm``: sum over points of half the gap between the nearmiss distance
  and the nearhit distance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataError, DimensionMismatchError
from .neighbors import ABSENT, NeighborResult
from .pointset import LabeledPointSet, class_statistics


class Measure(enum.Enum):
    CSM = "csm"
    SI = "si"
    HM = "hm"


class MeasureFlag(enum.Enum):
    WITHIN_SCATTER_ZERO = "WithinScatterZero"
    SINGLETON_HITS_SKIPPED = "SingletonHitsSkipped"


@dataclass(frozen=True)
class MeasureValue:
    """One measure evaluated on one point set.

    ``value`` is +inf (with ``WITHIN_SCATTER_ZERO`` flagged) when the
    within-class scatter vanishes while the between-class scatter does not.
    For ``hm``, ``per_point`` carries the margin sum divided by the number
    of contributing points, or None when every point was skipped.
    """

    measure: Measure
    value: float
    flags: frozenset[MeasureFlag] = frozenset()
    per_point: float | None = None

    def __post_init__(self):
        if self.measure is Measure.SI and not 0.0 <= self.value <= 1.0:
            raise ValueError(f"SI value {self.value} outside [0, 1]")
        if self.measure is Measure.CSM and self.value < 0.0:
            raise ValueError(f"CSM value {self.value} is negative")


def csm(point_set: LabeledPointSet) -> MeasureValue:
    """Between-class over within-class scatter-trace ratio.

    tr(S_B) = sum_i n_i ||m_i - m||^2 and tr(S_W) = sum over points of
    ||x - m_class||^2, with m_i the class means and m the global mean.

    Raises
    ------
    EmptyClassError
        If a class has no members.
    DegenerateDataError
        If all points coincide (both traces vanish).
    """
    stats = class_statistics(point_set)
    X = point_set.points
    if bool(np.all(X == X[0])):
        raise DegenerateDataError("all points coincide; no scatter at all")
    n0, n1 = stats.class_counts
    m0, m1 = stats.class_means
    m = stats.global_mean
    tr_b = n0 * float(((m0 - m) ** 2).sum()) + n1 * float(((m1 - m) ** 2).sum())
    mask1 = point_set.labels.astype(bool)
    tr_w = float(((X[~mask1] - m0) ** 2).sum()) + float(
        ((X[mask1] - m1) ** 2).sum()
    )
    if tr_w == 0.0:
        return MeasureValue(
            Measure.CSM, math.inf, frozenset({MeasureFlag.WITHIN_SCATTER_ZERO})
        )
    return MeasureValue(Measure.CSM, tr_b / tr_w)


def _check_paired(point_set: LabeledPointSet, neighbors: NeighborResult) -> None:
    if neighbors.n != point_set.n:
        raise DimensionMismatchError(
            f"neighbor result covers {neighbors.n} points, set has {point_set.n}"
        )


def si(point_set: LabeledPointSet, neighbors: NeighborResult) -> MeasureValue:
    """Fraction of points agreeing in label with their nearest neighbor.

    Implemented as a label-equality indicator, which for labels in {0, 1}
    equals the parity form (label(x) + label(nn(x)) + 1) mod 2.
    """
    _check_paired(point_set, neighbors)
    labels = point_set.labels
    agree = int((labels == labels[neighbors.nn_index]).sum())
    return MeasureValue(Measure.SI, agree / point_set.n)


def hm(point_set: LabeledPointSet, neighbors: NeighborResult) -> MeasureValue:
    """Summed hypothesis margin: half the nearmiss-nearhit distance gap.

    Points whose class has no other member have no nearhit; they are
    skipped and ``SINGLETON_HITS_SKIPPED`` is flagged. The value keeps the
    units of the coordinates and scales linearly with them.
    """
    _check_paired(point_set, neighbors)
    present = neighbors.nearhit_index != ABSENT
    margins = 0.5 * (
        neighbors.nearmiss_distance[present] - neighbors.nearhit_distance[present]
    )
    total = float(margins.sum())
    used = int(present.sum())
    flags = frozenset() if used == point_set.n else frozenset(
        {MeasureFlag.SINGLETON_HITS_SKIPPED}
    )
    return MeasureValue(
        Measure.HM, total, flags, per_point=total / used if used else None
    )
