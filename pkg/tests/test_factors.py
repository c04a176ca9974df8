import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CUBIC_14, E2_FOUR, rand_lorentzian, rand_system
from lorcert.factors import (
    FactorError,
    Step,
    extract_power_factor,
    find_disjoint_split,
    infer,
    primitive_part,
    split_disjoint,
)
from lorcert.geometry import Body, BodySystem, volume_polynomial
from lorcert.lorentzian import is_lorentzian
from lorcert.poly import HomoPoly, embed, mul, parse

BIPARTITE = "x1*x3 + x1*x4 + x2*x3 + x2*x4"


def test_split_examples():
    result = split_disjoint(parse(BIPARTITE), ([0, 1], [2, 3]))
    assert result.g == parse("x1 + x2") and result.h == parse("x1 + x2") and result.scale == 1
    assert result.to_json()["h"] == "x3 + x4"
    assert result.reassemble() == parse(BIPARTITE)
    assert split_disjoint(parse("x1^3 + 3*x1^2*x2 + 3*x1*x2^2"), ([0], [1])) is None
    e2 = parse(E2_FOUR)
    for left in ([0], [0, 1], [0, 2], [0, 3], [0, 1, 2]):
        right = [i for i in range(4) if i not in left]
        assert split_disjoint(e2, (left, right)) is None
    with pytest.raises(FactorError):
        split_disjoint(e2, ([0, 1], [1, 2, 3]))


def test_find_split_examples():
    found = find_disjoint_split(parse(BIPARTITE))
    assert [r.partition for r in found] == [((0, 1), (2, 3))]
    assert find_disjoint_split(parse(CUBIC_14)) == []
    assert [r.partition for r in find_disjoint_split(parse("x1*x2"))] == [((0,), (1,))]


def test_scale_absorbs_content():
    f = parse("6*x1*x3 + 4*x2*x3")
    result = split_disjoint(f, ([0, 1], [2]))
    assert result.g == parse("3*x1 + 2*x2")
    assert result.scale == 2
    assert result.reassemble() == f
    assert primitive_part(parse("4/3*x1 + 2*x2")) == (Fraction(2, 3), parse("2*x1 + 3*x2"))


def test_power_factor_examples():
    fk = mul(HomoPoly.monomial((0, 0, 2)), parse(CUBIC_14))
    pf = extract_power_factor(fk, 2)
    assert (pf.k, pf.g, pf.gate) == (2, parse(CUBIC_14), False)
    pf = extract_power_factor(parse("x1^3 + 3*x1^2*x2 + 3*x1*x2^2"), 0)
    assert (pf.k, pf.g, pf.gate) == (1, parse("x1^2 + 3*x1*x2 + 3*x2^2"), False)
    pf = extract_power_factor(parse("x1^3 + 2*x1^2*x2"), 0)
    assert (pf.k, pf.g, pf.gate) == (2, parse("x1 + 2*x2"), True)
    assert extract_power_factor(pf.g, 0).k == 0


def test_infer_cubic_and_f_k():
    report = infer(parse(CUBIC_14))
    assert report.lorentzian and report.volume is False
    assert report.derivation[0].rule == "contrapositive"
    for k in range(1, 4):
        fk = mul(HomoPoly.monomial((0, 0, k)), parse(CUBIC_14))
        report = infer(fk)
        assert report.lorentzian and report.volume is False
        steps = [s for s in report.derivation if s.rule == "Prop2.5"]
        assert steps and steps[0].extra["gate"] is False


def test_infer_does_not_overclaim_on_nonlorentzian_quotient():
    # x(x^2+3xy+3y^2) is a volume polynomial even though its quotient is not Lorentzian
    report = infer(parse("x1^3 + 3*x1^2*x2 + 3*x1*x2^2"))
    assert report.lorentzian and report.volume is None


def test_infer_with_volume_witness():
    bodies = BodySystem.of([Body.segment((1, 0)), Body.segment((1, 0)), Body.segment((0, 1)), Body.segment((0, 1))])
    report = infer(parse(BIPARTITE), volume_witness=bodies)
    assert report.volume is True
    assert {s.rule for s in report.derivation} >= {"Prop2.1", "Prop2.4"}
    with pytest.raises(FactorError):
        infer(parse(E2_FOUR), volume_witness=bodies)
    with pytest.raises(ValueError):
        Step("Lemma9", "p", "q")


def test_orthogonal_systems_split_into_volume_factors():
    rng = random.Random(41)
    for _ in range(6):
        S1 = rand_system(rng, d=1, max_bodies=2)
        S2 = rand_system(rng, d=2, max_bodies=2)
        bodies = [Body(tuple(v + (0, 0) for v in b.vertices)) for b in S1.bodies]
        bodies += [Body(tuple((0,) + v for v in b.vertices)) for b in S2.bodies]
        f = volume_polynomial(BodySystem(tuple(bodies), 3))
        n1 = S1.n
        result = split_disjoint(f, (range(n1), range(n1, f.n)))
        assert result is not None
        g1, g2 = volume_polynomial(S1), volume_polynomial(S2)
        assert result.g.scale(g1.coefficient_sum() / result.g.coefficient_sum()) == g1
        assert result.h.scale(g2.coefficient_sum() / result.h.coefficient_sum()) == g2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_split_factors_stay_lorentzian(seed):
    rng = random.Random(seed)
    n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
    g, h = rand_lorentzian(rng, n1, rng.randint(1, 2)), rand_lorentzian(rng, n2, rng.randint(1, 2))
    n = n1 + n2
    f = mul(embed(g, range(n1), n), embed(h, range(n1, n), n))
    result = split_disjoint(f, (range(n1), range(n1, n)))
    assert result.reassemble() == f
    assert is_lorentzian(result.g).passed and is_lorentzian(result.h).passed


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_gate_true_quotients_stay_lorentzian(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    g = rand_lorentzian(rng, n, rng.randint(1, 3))
    # force deg_1(g) <= 1 by substituting x1 only linearly
    g = HomoPoly(n, g.d, {e: c for e, c in g.terms.items() if e[0] <= 1}) if g.degree_in_var(0) > 1 else g
    if g.is_zero() or not is_lorentzian(g).passed:
        return
    k = rng.randint(1, 3)
    f = mul(HomoPoly.monomial((k,) + (0,) * (n - 1)), g)
    pf = extract_power_factor(f, 0)
    assert pf.gate and pf.g.min_degree_in_var(0) == 0
    assert mul(HomoPoly.monomial((pf.k,) + (0,) * (n - 1)), pf.g) == f
    assert is_lorentzian(pf.g).passed
