"""The ten acceptance criteria, each at its stated tolerance.

Every test prints one ``[PASS]``/``[FAIL]`` line; the lines are repeated in a
summary section at the end of the pytest run.
"""

import random
import time
from fractions import Fraction

import pytest

from conftest import (
    ACCEPTANCE_LINES,
    CUBIC_14,
    E2_FOUR,
    interpolation_oracle,
    rand_linear_form,
    rand_lorentzian,
    rand_nonneg_matrix,
    rand_polytope,
    rand_system,
    zonotope_volume_direct,
)
from lorcert import cli, factors, geometry, golden, hull, inequalities, lorentzian, poly, realizer
from lorcert.geometry import Body, SegmentFamily
from lorcert.poly import HomoPoly, embed, mul, normalized_coeffs, parse

pytestmark = pytest.mark.acceptance


def record(number: int, ok: bool, summary: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {summary}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_five_body_golden():
    geometry.clear_caches()
    start = time.perf_counter()
    f = geometry.volume_polynomial(golden.five_bodies())
    elapsed = time.perf_counter() - start
    expected = parse(golden.FIVE_BODY_POLY)
    ok = f == expected and elapsed < 5
    record(1, ok, f"five-body volume polynomial exact match={f == expected}, {elapsed:.2f}s (< 5s)")


def test_criterion_02_cubic_rkt_witness():
    f = parse(CUBIC_14)
    lor = lorentzian.is_lorentzian(f)
    rkt = inequalities.check_rkt(normalized_coeffs(f))
    w = rkt.witness or {}
    ok = (lor.passed and not rkt.passed and w["indices"] == {"roles": [1, 2, 3], "k": 1}
          and Fraction(w["lhs"]) == 12 and Fraction(w["rhs"]) == 14)
    record(2, ok, f"Lorentzian={lor.verdict}, rKT={rkt.verdict} at {w.get('indices')} with lhs={w.get('lhs')} rhs={w.get('rhs')}")


def test_criterion_03_e2_inertia_and_realizer():
    f = parse(E2_FOUR)
    lor = lorentzian.is_lorentzian(f)
    inert = lorentzian.inertia(lorentzian.hessian(f)).as_tuple()
    start = time.perf_counter()
    out = realizer.realize(f, 2, restarts=256, seed=golden.REALIZER_SEED)
    elapsed = time.perf_counter() - start
    ok = (lor.passed and inert == (1, 0, 3) and out.status == realizer.INCONCLUSIVE
          and out.residual > 1e-6 and out.restarts_used == 256 and elapsed < 30)
    record(3, ok, f"Lorentzian={lor.verdict}, inertia={inert}, realizer={out.status} "
                  f"residual={out.residual:.4g} (> 1e-6), {elapsed:.2f}s (< 30s)")


def test_criterion_04_shephard_bivariate():
    f = parse("x1^3 + 3*x1^2*x2 + 3*x1*x2^2")
    q = parse("x1^2 + 3*x1*x2 + 3*x2^2")
    lor_f, lor_q = lorentzian.is_lorentzian(f), lorentzian.is_lorentzian(q)
    inert = tuple((lor_q.witness or {}).get("inertia", ()))
    ok = lor_f.passed and not lor_q.passed and inert == (2, 0, 0)
    record(4, ok, f"f Lorentzian={lor_f.verdict}, quotient={lor_q.verdict} with inertia {inert}")


def test_criterion_05_non_mconvex_g():
    g = parse("x1^3 + 3*x2^2*x3 + 3*x2*x3^2")
    mc = lorentzian.is_mconvex(g.support())
    af = inequalities.check_af_class(normalized_coeffs(g))
    w = mc.witness or {}
    ok = (not mc.passed and tuple(w["alpha"]) == (3, 0, 0) and tuple(w["beta"]) == (0, 2, 1) and w["i"] == 1
          and af.passed and sum(af.instances.values()) > 0)
    record(5, ok, f"M-convex={mc.verdict} witness={w}, AF class={af.verdict} over {af.instances}")


def test_criterion_06_volume_polynomials_pass_all_certificates():
    rng = random.Random(20260601)
    start = time.perf_counter()
    failures = []
    for trial in range(200):
        S = rand_system(rng, d=rng.randint(1, 3), max_bodies=4)
        f = geometry.volume_polynomial(S)
        V = normalized_coeffs(f)
        checks = (lorentzian.is_lorentzian(f).passed, inequalities.check_af_class(V).passed,
                  inequalities.check_rkt(V).passed)
        if not all(checks):
            failures.append((trial, checks))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    record(6, ok, f"200 random systems, {len(failures)} failures, {elapsed:.1f}s (< 120s)")


def test_criterion_07_oracle_equivalence():
    rng = random.Random(77)
    mismatches = 0
    for _ in range(100):
        d = rng.randint(1, 3)
        n = rng.randint(1, 6)
        vectors = tuple(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(d)) for _ in range(n))
        F = SegmentFamily(d, vectors)
        S = F.to_system()
        ie = geometry.volume_polynomial(S, method="inclusion-exclusion")
        zono = geometry.zonotope_volume_polynomial(F)
        oracle = interpolation_oracle(S, lambda S_, x: zonotope_volume_direct(F, x))
        if not (ie == zono == oracle):
            mismatches += 1
    record(7, mismatches == 0, f"100 segment families (n <= 6, d <= 3), {mismatches} mismatches")


def _lorentzian_sample(rng):
    if rng.random() < 0.5:
        return rand_lorentzian(rng, rng.randint(2, 4), rng.randint(1, 3))
    return geometry.volume_polynomial(rand_system(rng, d=rng.randint(1, 3), max_bodies=4))


def test_criterion_08_closure_properties():
    rng = random.Random(808)
    counts = {"product": 0, "substitution": 0, "slices": 0, "split": 0, "power": 0}
    bad = {k: 0 for k in counts}
    for _ in range(100):
        f = _lorentzian_sample(rng)
        g = rand_lorentzian(rng, f.n, rng.randint(1, 2))
        counts["product"] += 1
        bad["product"] += not lorentzian.is_lorentzian(mul(f, g)).passed

        A = rand_nonneg_matrix(rng, f.n, rng.randint(1, 4))
        h = poly.substitute_linear(f, A)
        counts["substitution"] += 1
        bad["substitution"] += not (h.is_zero() or lorentzian.is_lorentzian(h).passed)

        i = rng.randrange(f.n)
        parts = [p for p in poly.slices(f, i) if not p.is_zero()]
        counts["slices"] += 1
        bad["slices"] += not all(lorentzian.is_lorentzian(p).passed for p in parts)

        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        a, b = _lorentzian_sample_in(rng, n1), _lorentzian_sample_in(rng, n2)
        n = n1 + n2
        prod = mul(embed(a, range(n1), n), embed(b, range(n1, n), n))
        split = factors.split_disjoint(prod, (range(n1), range(n1, n)))
        counts["split"] += 1
        bad["split"] += not (lorentzian.is_lorentzian(prod).passed and split is not None
                             and split.reassemble() == prod
                             and lorentzian.is_lorentzian(split.g).passed
                             and lorentzian.is_lorentzian(split.h).passed)

        m = rng.randint(2, 4)
        q = rand_linear_form(rng, m)
        for _ in range(rng.randint(0, 2)):
            q = mul(q, HomoPoly.linear([0] + [rng.randint(0, 3) for _ in range(m - 1)]) + HomoPoly.linear([0, 1] + [0] * (m - 2)))
        k = rng.randint(1, 3)
        pf_in = mul(HomoPoly.monomial((k,) + (0,) * (m - 1)), q)
        pf = factors.extract_power_factor(pf_in, 0)
        counts["power"] += 1
        bad["power"] += not (lorentzian.is_lorentzian(pf_in).passed and pf.gate
                             and lorentzian.is_lorentzian(pf.g).passed)
    ok = not any(bad.values())
    record(8, ok, "closure suites " + ", ".join(f"{k}: {counts[k] - bad[k]}/{counts[k]}" for k in counts))


def _lorentzian_sample_in(rng, n):
    return rand_lorentzian(rng, n, rng.randint(1, 3))


def test_criterion_09_subspace_product_identity():
    rng = random.Random(909)
    passed = 0
    for _ in range(50):
        d = rng.randint(1, 3)
        k = rng.randint(1, d)
        E = sorted(rng.sample(range(d), k))
        L = []
        for _ in range(k):
            body = rand_polytope(rng, d, max_points=5)
            L.append(Body(tuple(tuple(x if c in E else 0 for c, x in enumerate(v)) for v in body.vertices)))
        K = [rand_polytope(rng, d, max_points=5) for _ in range(d - k)]
        passed += geometry.check_subspace_product(L, K, E).passed
    record(9, passed == 50, f"subspace product identity exact on {passed}/50 configurations")


FAULTS = {
    "inertia reports every eigenvalue positive": (
        lorentzian, "inertia", lambda M: lorentzian.Inertia(len(M), 0, 0)),
    "hessian doubles the diagonal": (
        lorentzian, "hessian", lambda q, _h=lorentzian.hessian: [[2 * x if i == j else x for j, x in enumerate(row)]
                                                                for i, row in enumerate(_h(q))]),
    "M-convexity always fails": (
        lorentzian, "is_mconvex", lambda support: lorentzian.CertReport("fail", {"alpha": (), "beta": (), "i": 0})),
    "mixed volume off by 1/7": (
        geometry, "mixed_volume", lambda S, alpha, method="auto", _mv=geometry.mixed_volume: _mv(S, alpha, method) + Fraction(1, 7)),
    "hull volume doubled": (
        hull, "hull_volume", lambda pts, dim=None, _hv=hull.hull_volume: 2 * _hv(pts, dim)),
    "rKT check always passes": (
        inequalities, "check_rkt", lambda V: inequalities.CertReport("pass")),
    "AF class always fails": (
        inequalities, "check_af_class", lambda V: inequalities.CertReport("fail", {"family": "AF"})),
    "realizer claims success": (
        realizer, "realize", lambda *a, **k: realizer.RealizeOutcome(realizer.REALIZED, None, 0.0, 256, True, 0)),
    "slices returned in reverse": (
        poly, "slices", lambda f, i, _s=poly.slices: list(reversed(_s(f, i)))),
    "power factor gate always true": (
        factors, "extract_power_factor",
        lambda f, i, _e=factors.extract_power_factor: factors.PowerFactor(*(lambda p: (p.i, p.k, p.g, True))(_e(f, i)))),
    "inference never concludes": (
        factors, "infer", lambda f, **kw: factors.InferenceReport(f, True, None)),
}


def test_criterion_10_verify_paper_and_fault_injection(monkeypatch, capsys):
    code = cli.main(["verify-paper"])
    out = capsys.readouterr().out
    clean = code == 0 and "7/7 examples pass" in out
    undetected = []
    for label, (module, name, fake) in FAULTS.items():
        with monkeypatch.context() as m:
            m.setattr(module, name, fake)
            results = golden.verify_all()
        if all(r.passed for r in results):
            undetected.append(label)
    geometry.clear_caches()
    ok = clean and not undetected
    record(10, ok, f"verify-paper exit {code} (7/7={clean}); {len(FAULTS) - len(undetected)}/{len(FAULTS)} "
                   f"injected faults flip an example" + (f"; undetected: {undetected}" if undetected else ""))
