"""Shared random generators for the test suite."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from lorcert.geometry import Body, BodySystem, SegmentFamily
from lorcert.poly import HomoPoly, mul

CUBIC_14 = "14*x1^3 + 6*x1^2*x2 + 24*x1^2*x3 + 12*x1*x2*x3 + 6*x1*x3^2 + 3*x2*x3^2"
E2_FOUR = "x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4"


def rand_fraction(rng: random.Random, lo=-2, hi=2, max_den=4) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_point(rng, d, **kw):
    return tuple(rand_fraction(rng, **kw) for _ in range(d))


def rand_polytope(rng, d, max_points=6, name=""):
    k = rng.randint(1, max_points)
    return Body(tuple(rand_point(rng, d) for _ in range(k)), name)


def rand_system(rng, d=None, max_bodies=4, full=True):
    """Random rational polytopes (denominators <= 4); full-dimensional when ``full``."""
    while True:
        dim = d or rng.randint(1, 3)
        n = rng.randint(1, max_bodies)
        S = BodySystem(tuple(rand_polytope(rng, dim, name=f"K{i + 1}") for i in range(n)), dim)
        if not full or S.is_full_dimensional():
            return S


def rand_segments(rng, n, d, lo=-2, hi=2):
    return SegmentFamily(d, tuple(tuple(Fraction(rng.randint(lo, hi)) for _ in range(d)) for _ in range(n)))


def rand_linear_form(rng, n, max_coeff=3, density=0.7):
    while True:
        coeffs = [rng.randint(1, max_coeff) if rng.random() < density else 0 for _ in range(n)]
        if any(coeffs):
            return HomoPoly.linear(coeffs)


def rand_lorentzian(rng, n, d):
    """Product of nonnegative linear forms: always Lorentzian."""
    f = HomoPoly.constant(n)
    for _ in range(d):
        f = mul(f, rand_linear_form(rng, n))
    return f


def rand_nonneg_matrix(rng, rows, cols, max_entry=2):
    while True:
        A = [[Fraction(rng.randint(0, max_entry * 2), 2) for _ in range(cols)] for _ in range(rows)]
        if all(any(row) for row in A):
            return A


def rand_symmetric(rng, n, lo=-4, hi=4):
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = rand_fraction(rng, lo, hi)
    return M


def interpolation_oracle(S: BodySystem, volume_fn) -> HomoPoly:
    """Recover the volume polynomial from values ``vol(sum x_i K_i)`` at positive rational points."""
    from lorcert.exact import solve
    from lorcert.poly import compositions

    monomials = list(compositions(S.n, S.dim))
    rng = random.Random(12345)
    while True:
        points = [[Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(S.n)] for _ in monomials]
        A = [[_mono(p, m) for m in monomials] for p in points]
        b = [volume_fn(S, p) for p in points]
        coeffs = solve(A, b)
        if coeffs is not None:
            return HomoPoly(S.n, S.dim, dict(zip(monomials, coeffs)))


def _mono(point, exp):
    out = Fraction(1)
    for x, e in zip(point, exp):
        out *= x**e
    return out


def scaled_sum_volume(S: BodySystem, x) -> Fraction:
    """``vol(x_1 K_1 + ... + x_n K_n)`` by an explicit Minkowski sum and hull."""
    from lorcert import hull

    pts = [(Fraction(0),) * S.dim]
    for body, c in zip(S.bodies, x):
        pts = list({tuple(p + c * q for p, q in zip(a, v)) for a in pts for v in body.vertices})
        pts = hull.hull_points(pts)
    return hull.hull_volume(pts, S.dim)


def zonotope_volume_direct(F: SegmentFamily, x) -> Fraction:
    """Zonotope volume by the same explicit Minkowski-sum route (no determinants)."""
    return scaled_sum_volume(F.to_system(), x)


def all_subsets(n, d):
    return list(combinations(range(n), d))


@pytest.fixture
def rng():
    return random.Random(2024)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
