import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from conftest import rand_point
from lorcert.hull import HullError, affine_dimension, hull_points, hull_volume


def test_basic_volumes():
    cube = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    assert hull_volume(cube) == 1
    assert hull_volume([(0, 0), (1, 0), (0, 1)]) == Fraction(1, 2)
    assert hull_volume([(0, 0, 0), (1, 0, 0)]) == 0
    assert hull_volume([(Fraction(1, 3),)]) == 0
    assert hull_volume([(0,), (Fraction(5, 2),), (1,)]) == Fraction(5, 2)


def test_degenerate_inputs_have_zero_volume():
    coplanar = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (Fraction(1, 2), Fraction(1, 3), 0)]
    assert hull_volume(coplanar) == 0
    assert affine_dimension(coplanar) == 2
    collinear = [(0, 0), (1, 1), (2, 2)]
    assert hull_volume(collinear) == 0
    assert affine_dimension(collinear) == 1
    assert sorted(hull_points(collinear)) == [(0, 0), (2, 2)]


def test_hull_points_of_square_with_interior():
    pts = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)]
    assert sorted(hull_points(pts)) == [(0, 0), (0, 2), (2, 0), (2, 2)]


def test_dimension_limits():
    with pytest.raises(HullError):
        hull_volume([(0, 0, 0, 0)])
    with pytest.raises(HullError):
        hull_points([])


@pytest.mark.parametrize("dim", [2, 3])
def test_volume_matches_scipy(dim):
    rng = random.Random(dim)
    for _ in range(80):
        pts = [rand_point(rng, dim) for _ in range(rng.randint(dim + 1, 12))]
        ours = hull_volume(pts)
        arr = np.array([[float(x) for x in p] for p in pts])
        if np.linalg.matrix_rank(arr[1:] - arr[0]) < dim:
            assert ours == 0
            continue
        assert float(ours) == pytest.approx(ConvexHull(arr).volume, rel=1e-9, abs=1e-12)
        verts = {tuple(arr[i]) for i in ConvexHull(arr).vertices}
        ours_pts = {tuple(float(x) for x in p) for p in hull_points(pts)}
        assert verts <= ours_pts


def test_volume_is_translation_invariant():
    rng = random.Random(11)
    for _ in range(20):
        pts = [rand_point(rng, 3) for _ in range(8)]
        t = rand_point(rng, 3)
        moved = [tuple(a + b for a, b in zip(p, t)) for p in pts]
        assert hull_volume(pts) == hull_volume(moved)
