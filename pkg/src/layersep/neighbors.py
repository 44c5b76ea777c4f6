"""Exact nearest-neighbor search over a labeled point set.

Two interchangeable paths:

* :func:`all_nearest_reference`, a plain per-query scan over direct
  coordinate differences. Slow but obviously correct; it is the oracle.
* :func:`all_nearest`, a blocked path that forms squared distances through
  the Gram identity ||a-b||^2 = ||a||^2 - 2 a.b + ||b||^2 and therefore runs
  on matrix products. The Gram form loses precision, so every candidate
  whose squared distance lands within a small band of the block minimum is
  re-compared on directly computed 64-bit distances before selection.

Both paths exclude only the query point itself (by index), break distance
ties toward the smallest index, and return identical index arrays.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import EmptyClassError
from .pointset import LabeledPointSet

_BLOCK_ROWS = 512
_TIE_REL = 1e-9  # near-tie band, relative to the best squared distance

ABSENT = -1  # nearhit index marker for singleton-class points


@dataclass(frozen=True)
class NeighborResult:
    """Per-point nearest neighbors under Euclidean distance.

    ``nearhit`` is the nearest other point with the same label and is marked
    absent (index ``ABSENT``, distance NaN) for a point whose class has no
    other member. ``nearmiss`` is the nearest point with the different label
    and always exists once both classes are non-empty. ``nn`` is the nearest
    other point regardless of label.
    """

    nn_index: np.ndarray
    nn_distance: np.ndarray
    nearhit_index: np.ndarray
    nearhit_distance: np.ndarray
    nearmiss_index: np.ndarray
    nearmiss_distance: np.ndarray

    @property
    def n(self) -> int:
        return self.nn_index.shape[0]


def _check_classes(labels: np.ndarray) -> None:
    n1 = int(labels.sum())
    if n1 == 0 or n1 == labels.size:
        missing = 1 if n1 == 0 else 0
        raise EmptyClassError(
            f"class {missing} has no members; nearmiss is undefined"
        )


def _combine(hit_i, hit_d, miss_i, miss_d):
    """Merge hit/miss picks into the unconstrained nearest neighbor.

    Compares the reported (square-rooted) distances, exactly as a direct
    scan over all candidates would, with index as tie-break. Absent hits
    carry NaN distances, which compare false, leaving the miss in place.
    """
    nn_i = miss_i.copy()
    nn_d = miss_d.copy()
    closer = (hit_i != ABSENT) & (
        (hit_d < miss_d) | ((hit_d == miss_d) & (hit_i < miss_i))
    )
    nn_i[closer] = hit_i[closer]
    nn_d[closer] = hit_d[closer]
    return nn_i, nn_d


def all_nearest_reference(point_set: LabeledPointSet) -> NeighborResult:
    """Brute-force oracle: one direct distance row per query point.

    O(n^2 d); intended for n up to a few thousand.
    """
    X = point_set.points
    labels = point_set.labels
    n = point_set.n
    _check_classes(labels)

    hit_i = np.full(n, ABSENT, dtype=np.int64)
    hit_d = np.full(n, np.nan)
    miss_i = np.empty(n, dtype=np.int64)
    miss_d = np.empty(n)

    for i in range(n):
        dist = np.sqrt(((X - X[i]) ** 2).sum(axis=1))
        same = labels == labels[i]
        hit_row = np.where(same, dist, np.inf)
        hit_row[i] = np.inf
        j = int(np.argmin(hit_row))  # first occurrence: smallest index wins
        if np.isfinite(hit_row[j]):
            hit_i[i] = j
            hit_d[i] = hit_row[j]
        miss_row = np.where(same, np.inf, dist)
        j = int(np.argmin(miss_row))
        miss_i[i] = j
        miss_d[i] = miss_row[j]

    nn_i, nn_d = _combine(hit_i, hit_d, miss_i, miss_d)
    return NeighborResult(nn_i, nn_d, hit_i, hit_d, miss_i, miss_d)


def all_nearest(point_set: LabeledPointSet, threads: int = 0) -> NeighborResult:
    """Exact nearest, nearhit and nearmiss neighbors for every point.

    Parameters
    ----------
    threads : int
        Worker threads over query blocks; 0 picks a machine default.
        Blocking is fixed, so the result is identical for every setting.
    """
    X = point_set.points
    labels = point_set.labels
    n = point_set.n
    _check_classes(labels)

    sq = np.einsum("ij,ij->i", X, X)
    max_sq = float(sq.max())
    # Absolute error bound for one Gram-form squared distance; the dot
    # product contributes ~d*eps*|a||b| and the constant is deliberately
    # fat. Anything inside best + band gets an exact re-check, so a wide
    # band costs a little work, never correctness.
    eps = np.finfo(np.float64).eps
    err_abs = 16.0 * (point_set.d + 8) * eps * max(max_sq, 1e-300)

    cols = (np.flatnonzero(labels == 0), np.flatnonzero(labels == 1))
    counts = (cols[0].size, cols[1].size)
    pos_in_class = np.empty(n, dtype=np.int64)
    pos_in_class[cols[0]] = np.arange(counts[0])
    pos_in_class[cols[1]] = np.arange(counts[1])

    hit_i = np.full(n, ABSENT, dtype=np.int64)
    hit_d2 = np.full(n, np.nan)
    miss_i = np.empty(n, dtype=np.int64)
    miss_d2 = np.empty(n)

    def process_block(start: int, stop: int) -> None:
        g = X[start:stop] @ X.T
        d2 = sq[start:stop, None] + sq[None, :] - 2.0 * g
        np.maximum(d2, 0.0, out=d2)
        queries = np.arange(start, stop)
        for cls in (0, 1):
            sub = d2[:, cols[cls]]  # (block, n_cls) copy, safe to mutate
            own = labels[start:stop] == cls
            sub[own, pos_in_class[queries[own]]] = np.inf  # self excluded
            best = sub.min(axis=1)
            arg = sub.argmin(axis=1)
            band = _TIE_REL * best + err_abs
            n_tied = (sub <= (best + band)[:, None]).sum(axis=1)

            # exact 64-bit distances for the selected candidates
            win = cols[cls][arg]
            diffs = X[win] - X[start:stop]
            exact = (diffs**2).sum(axis=1)

            # rows with near-ties: re-compare every banded candidate exactly
            for r in np.flatnonzero(n_tied > 1):
                i = start + r
                cand = cols[cls][np.flatnonzero(sub[r] <= best[r] + band[r])]
                cand = cand[cand != i]
                dd = X[cand] - X[i]
                ex = (dd**2).sum(axis=1)
                k = int(np.argmin(np.sqrt(ex)))  # ties: smallest index
                win[r] = cand[k]
                exact[r] = ex[k]

            if counts[cls] > 1:
                hit_rows = own
            else:
                hit_rows = np.zeros(stop - start, dtype=bool)  # absent
            hit_i[queries[hit_rows]] = win[hit_rows]
            hit_d2[queries[hit_rows]] = exact[hit_rows]
            miss_i[queries[~own]] = win[~own]
            miss_d2[queries[~own]] = exact[~own]

    blocks = [(s, min(s + _BLOCK_ROWS, n)) for s in range(0, n, _BLOCK_ROWS)]
    if threads == 0:
        threads = min(os.cpu_count() or 1, 8)
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda b: process_block(*b), blocks))
    else:
        for s, e in blocks:
            process_block(s, e)

    hit_d = np.sqrt(hit_d2)
    miss_d = np.sqrt(miss_d2)
    nn_i, nn_d = _combine(hit_i, hit_d, miss_i, miss_d)
    return NeighborResult(nn_i, nn_d, hit_i, hit_d, miss_i, miss_d)
