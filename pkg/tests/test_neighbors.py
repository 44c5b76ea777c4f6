import numpy as np
import pytest

from layersep import (
    ABSENT,
    EmptyClassError,
    all_nearest,
    all_nearest_reference,
    build_point_set,
)

from helpers import random_orthogonal, random_point_set

SQUARE = build_point_set(
    [[0.0, 0.0], [0.0, 2.0], [4.0, 0.0], [4.0, 2.0]], [0, 0, 1, 1]
)


@pytest.mark.parametrize("engine", [all_nearest, all_nearest_reference])
def test_hand_example(engine):
    nb = engine(SQUARE)
    assert nb.nn_index[0] == 1 and nb.nn_distance[0] == 2.0
    assert nb.nearhit_index[0] == 1 and nb.nearhit_distance[0] == 2.0
    assert nb.nearmiss_index[0] == 2 and nb.nearmiss_distance[0] == 4.0


@pytest.mark.parametrize("engine", [all_nearest, all_nearest_reference])
def test_coincident_opposite_labels(engine):
    ps = build_point_set([[1.0, 1.0], [1.0, 1.0]], [0, 1])
    nb = engine(ps)
    np.testing.assert_array_equal(nb.nearmiss_distance, [0.0, 0.0])
    np.testing.assert_array_equal(nb.nearmiss_index, [1, 0])
    # each class is a singleton, so no nearhit exists
    np.testing.assert_array_equal(nb.nearhit_index, [ABSENT, ABSENT])
    assert np.isnan(nb.nearhit_distance).all()


@pytest.mark.parametrize("engine", [all_nearest, all_nearest_reference])
def test_line_example(engine):
    ps = build_point_set([[0.0], [1.0], [3.0]], [0, 0, 1])
    nb = engine(ps)
    assert nb.nn_index[1] == 0 and nb.nn_distance[1] == 1.0
    assert nb.nearhit_index[1] == 0
    assert nb.nearmiss_index[1] == 2 and nb.nearmiss_distance[1] == 2.0


@pytest.mark.parametrize("engine", [all_nearest, all_nearest_reference])
def test_tie_breaks_toward_smallest_index(engine):
    # point 1 is equidistant from points 0 and 2, both opposite-labeled
    ps = build_point_set([[0.0], [1.0], [2.0]], [0, 1, 0])
    nb = engine(ps)
    assert nb.nearmiss_index[1] == 0
    assert nb.nn_index[1] == 0


@pytest.mark.parametrize("engine", [all_nearest, all_nearest_reference])
def test_single_class_rejected(engine):
    with pytest.raises(EmptyClassError):
        engine(build_point_set([[0.0], [1.0]], [1, 1]))


def test_oracle_equivalence_random():
    rng = np.random.default_rng(42)
    for trial in range(40):
        d = (1, 2, 16, 768)[trial % 4]
        n = int(rng.integers(3, 200))
        ps = random_point_set(rng, n, d, round_to=1 if trial % 5 == 0 else None)
        fast = all_nearest(ps)
        ref = all_nearest_reference(ps)
        np.testing.assert_array_equal(fast.nn_index, ref.nn_index)
        np.testing.assert_array_equal(fast.nearhit_index, ref.nearhit_index)
        np.testing.assert_array_equal(fast.nearmiss_index, ref.nearmiss_index)
        np.testing.assert_allclose(fast.nn_distance, ref.nn_distance, rtol=1e-9)
        np.testing.assert_allclose(
            fast.nearmiss_distance, ref.nearmiss_distance, rtol=1e-9
        )
        present = ref.nearhit_index != ABSENT
        np.testing.assert_allclose(
            fast.nearhit_distance[present],
            ref.nearhit_distance[present],
            rtol=1e-9,
        )


def test_thread_count_does_not_change_results():
    rng = np.random.default_rng(3)
    ps = random_point_set(rng, 1500, 24)  # several blocks
    base = all_nearest(ps, threads=1)
    for threads in (0, 2, 5):
        other = all_nearest(ps, threads=threads)
        np.testing.assert_array_equal(other.nn_index, base.nn_index)
        np.testing.assert_array_equal(other.nearhit_index, base.nearhit_index)
        np.testing.assert_array_equal(other.nearmiss_index, base.nearmiss_index)
        np.testing.assert_array_equal(other.nn_distance, base.nn_distance)


def test_isometry_leaves_indices_unchanged():
    rng = np.random.default_rng(9)
    for trial in range(20):
        d = (2, 5, 16)[trial % 3]
        ps = random_point_set(rng, 120, d)
        base = all_nearest(ps)
        q = random_orthogonal(rng, d)
        t = rng.normal(scale=5.0, size=d)
        moved = all_nearest(build_point_set(ps.points @ q + t, ps.labels))
        np.testing.assert_array_equal(moved.nn_index, base.nn_index)
        np.testing.assert_array_equal(moved.nearhit_index, base.nearhit_index)
        np.testing.assert_array_equal(moved.nearmiss_index, base.nearmiss_index)
        np.testing.assert_allclose(
            moved.nn_distance, base.nn_distance, rtol=1e-6
        )


def test_result_invariants_hold():
    rng = np.random.default_rng(17)
    for trial in range(25):
        ps = random_point_set(
            rng, int(rng.integers(3, 120)), int(rng.integers(1, 20)),
            round_to=0 if trial % 4 == 0 else None,
        )
        nb = all_nearest(ps)
        n = ps.n
        assert (nb.nn_index != np.arange(n)).all()
        assert (nb.nn_distance >= 0).all() and np.isfinite(nb.nn_distance).all()
        assert (nb.nearmiss_distance >= 0).all()
        present = nb.nearhit_index != ABSENT
        both = np.minimum(
            nb.nearhit_distance[present], nb.nearmiss_distance[present]
        )
        np.testing.assert_array_equal(nb.nn_distance[present], both)
        # neighbor labels match the constraint that defines them
        labels = ps.labels
        assert (labels[nb.nearmiss_index] != labels).all()
        hit_rows = np.flatnonzero(present)
        assert (labels[nb.nearhit_index[hit_rows]] == labels[hit_rows]).all()
