"""Shared builders for randomized and synthetic test data."""

from __future__ import annotations

import numpy as np

from layersep import LabeledPointSet, LayerStack, build_layer_stack, build_point_set


def random_point_set(
    rng: np.random.Generator, n: int, d: int, round_to: int | None = None
) -> LabeledPointSet:
    """Random normal coordinates with both classes guaranteed present.

    ``round_to`` coarsens coordinates to force duplicate points and exact
    distance ties.
    """
    pts = rng.normal(size=(n, d))
    if round_to is not None:
        pts = np.round(pts, round_to)
    labels = rng.integers(0, 2, size=n)
    labels[0] = 0
    labels[1] = 1
    return build_point_set(pts, labels)


def random_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-ish random orthogonal matrix via QR with sign fixing."""
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    return q * np.sign(np.diag(r))


def two_gaussians(
    n: int = 400,
    d: int = 8,
    separation: float = 1.0,
    sigma: float = 1.0,
    seed: int = 0,
    noise: np.ndarray | None = None,
) -> LabeledPointSet:
    """Two spherical Gaussian classes with means ``separation`` apart.

    Passing the same ``noise`` array for several separations moves only
    the class means, which keeps the within-class spread fixed.
    """
    if noise is None:
        noise = np.random.default_rng(seed).normal(scale=sigma, size=(n, d))
    half = n // 2
    pts = noise.copy()
    pts[:half, 0] -= separation / 2.0
    pts[half:, 0] += separation / 2.0
    labels = np.concatenate([np.zeros(half, int), np.ones(n - half, int)])
    return build_point_set(pts, labels)


def stack_with_separable_layer(
    seed: int = 7,
    n: int = 240,
    d: int = 16,
    layer_count: int = 12,
    hot_layer: int = 7,
    offset: float = 8.0,
    dataset_name: str = "synthetic",
) -> LayerStack:
    """12-layer stack of overlapping clouds except one separable layer."""
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 2, size=n)
    labels[0] = 0
    labels[1] = 1
    layers = []
    for j in range(1, layer_count + 1):
        pts = rng.normal(size=(n, d))
        if j == hot_layer:
            pts[labels == 0, 0] -= offset / 2.0
            pts[labels == 1, 0] += offset / 2.0
        layers.append(build_point_set(pts, labels))
    return build_layer_stack(layers, dataset_name=dataset_name)


def random_stack(
    rng: np.random.Generator,
    layer_count: int | None = None,
    n: int | None = None,
    name: str | None = None,
) -> LayerStack:
    """Random stack with per-layer dimensionalities allowed to differ."""
    if layer_count is None:
        layer_count = int(rng.integers(1, 7))
    if n is None:
        n = int(rng.integers(2, 40))
    labels = rng.integers(0, 2, size=n)
    if name is None:
        name = f"stack-{rng.integers(1_000_000)}"
    layers = []
    for _ in range(layer_count):
        d = int(rng.integers(1, 24))
        layers.append(build_point_set(rng.normal(size=(n, d)), labels))
    return build_layer_stack(layers, dataset_name=name)
