"""Built-in golden examples with known verdicts, run by ``lorcert verify-paper``.

Every library call goes through its module attribute so that a fault patched
into one module shows up here as a failing example.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import factors, geometry, inequalities, lorentzian, poly, realizer

CUBIC_14 = "14*x1^3 + 6*x1^2*x2 + 24*x1^2*x3 + 12*x1*x2*x3 + 6*x1*x3^2 + 3*x2*x3^2"
E2_FOUR = "x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4"
FIVE_BODY_POLY = (
    "x5^3 + x1*x5^2 + x2*x5^2 + x3*x5^2 + 3/2*x4*x5^2"
    " + x1*x2*x5 + x1*x3*x5 + x1*x4*x5 + x2*x3*x5 + x2*x4*x5 + x3*x4*x5"
    " + x1*x2*x3 + 1/2*x1*x2*x4 + 1/2*x1*x3*x4 + 1/2*x2*x3*x4"
)
SHEPHARD_BIVARIATE = "x1^3 + 3*x1^2*x2 + 3*x1*x2^2"
NON_LORENTZIAN_G = "x1^3 + 3*x2^2*x3 + 3*x2*x3^2"
REALIZER_SEED = 20240601
REALIZER_RESTARTS = 256


def five_bodies() -> geometry.BodySystem:
    h = Fraction(1, 2)
    cube = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    return geometry.BodySystem.of([
        geometry.Body.segment((1, 0, 0), name="K1"),
        geometry.Body.segment((0, 1, 0), name="K2"),
        geometry.Body.segment((0, 0, 1), name="K3"),
        geometry.Body.segment((h, h, h), name="K4"),
        geometry.Body(tuple(cube), "K5"),
    ])


def f_k(k: int) -> poly.HomoPoly:
    return poly.HomoPoly.monomial((0, 0, k)) * poly.parse(CUBIC_14)


def split_last_variable(g: poly.HomoPoly) -> poly.HomoPoly:
    """``g(x_1, ..., x_n + x_{n+1})`` via a nonnegative linear substitution."""
    n = g.n
    A = [[1 if (j == i or (i == n - 1 and j == n)) else 0 for j in range(n + 1)] for i in range(n)]
    return poly.substitute_linear(g, A)


@dataclass
class ExampleResult:
    name: str
    checks: list[tuple[str, bool]] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(ok for _, ok in self.checks)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [{"check": c, "ok": ok} for c, ok in self.checks],
            "error": self.error,
        }


def _cubic_14(out: ExampleResult) -> None:
    f = poly.parse(CUBIC_14)
    V = poly.normalized_coeffs(f)
    out.checks.append(("Lorentzian pass", lorentzian.is_lorentzian(f).passed))
    out.checks.append(("AF class pass", inequalities.check_af_class(V).passed))
    rkt = inequalities.check_rkt(V)
    w = rkt.witness or {}
    out.checks.append(("rKT fail", not rkt.passed))
    out.checks.append(("rKT witness k=1, roles (1,2,3), 12 < 14",
                       w.get("indices") == {"roles": [1, 2, 3], "k": 1}
                       and w.get("lhs") == "12" and w.get("rhs") == "14"))


def _e2_four(out: ExampleResult) -> None:
    f = poly.parse(E2_FOUR)
    report = lorentzian.is_lorentzian(f)
    out.checks.append(("Lorentzian pass", report.passed))
    H = lorentzian.hessian(f)
    out.checks.append(("Hessian inertia (1,0,3)", lorentzian.inertia(H).as_tuple() == (1, 0, 3)))
    outcome = realizer.realize(f, 2, restarts=REALIZER_RESTARTS, seed=REALIZER_SEED)
    out.checks.append(("realizer Inconclusive", outcome.status == realizer.INCONCLUSIVE))
    out.checks.append(("best residual > 1e-6", outcome.residual > 1e-6))


def _five_body(out: ExampleResult) -> None:
    S = five_bodies()
    f = geometry.volume_polynomial(S)
    out.checks.append(("volume polynomial matches exactly", f == poly.parse(FIVE_BODY_POLY)))
    out.checks.append(("Lorentzian pass", lorentzian.is_lorentzian(f).passed))
    out.checks.append(("x5 slice f_2 = e2(x1..x4)",
                       poly.slices(f, 4)[2] == poly.parse(E2_FOUR)))
    out.checks.append(("volume slices check pass", geometry.volume_slices_check(S, 4).passed))


def _shephard(out: ExampleResult) -> None:
    f = poly.parse(SHEPHARD_BIVARIATE)
    out.checks.append(("Lorentzian pass", lorentzian.is_lorentzian(f).passed))
    power = factors.extract_power_factor(f, 0)
    out.checks.append(("x1 power factor k=1 with gate false", power.k == 1 and not power.gate))
    quotient = lorentzian.is_lorentzian(power.g)
    out.checks.append(("quotient Lorentzian fail", not quotient.passed))
    inert = (quotient.witness or {}).get("inertia")
    out.checks.append(("quotient Hessian inertia (2,0,0)", list(inert or []) == [2, 0, 0]))


def _mconvex_g(out: ExampleResult) -> None:
    g = poly.parse(NON_LORENTZIAN_G)
    report = lorentzian.is_mconvex(g.support())
    w = report.witness or {}
    out.checks.append(("M-convexity fail", not report.passed))
    out.checks.append(("exchange witness alpha=(3,0,0), beta=(0,2,1), i=1",
                       tuple(w.get("alpha", ())) == (3, 0, 0) and tuple(w.get("beta", ())) == (0, 2, 1)
                       and w.get("i") == 1))
    out.checks.append(("AF class pass", inequalities.check_af_class(poly.normalized_coeffs(g)).passed))


def _f_k(out: ExampleResult) -> None:
    for k in range(4):
        f = f_k(k)
        out.checks.append((f"f_{k} Lorentzian pass", lorentzian.is_lorentzian(f).passed))
        report = factors.infer(f)
        out.checks.append((f"f_{k} inferred not a volume polynomial", report.volume is False))


def _substitution(out: ExampleResult) -> None:
    for label, text in (("cubic 14x1^3+...", CUBIC_14), ("e2 in 4 variables", E2_FOUR)):
        g = poly.parse(text)
        h = split_last_variable(g)
        out.checks.append((f"{label}: g Lorentzian", lorentzian.is_lorentzian(g).passed))
        out.checks.append((f"{label}: g(x1, ..., x_n + x_(n+1)) Lorentzian", lorentzian.is_lorentzian(h).passed))
    cubic = poly.parse(CUBIC_14)
    out.checks.append(("cubic 14x1^3+... fails rKT (not a volume polynomial)",
                       not inequalities.check_rkt(poly.normalized_coeffs(cubic)).passed))


EXAMPLES: list[tuple[str, Callable[[ExampleResult], None]]] = [
    ("1 lorentzian-cubic", _cubic_14),
    ("2 e2-four-variables", _e2_four),
    ("3 five-body-system", _five_body),
    ("4 shephard-bivariate", _shephard),
    ("5 non-mconvex-g", _mconvex_g),
    ("6 f_k-chain", _f_k),
    ("7 substitution", _substitution),
]


def run_example(name: str, fn: Callable[[ExampleResult], None]) -> ExampleResult:
    out = ExampleResult(name)
    try:
        fn(out)
    except Exception as exc:  # a crashing example is a red example
        out.error = f"{type(exc).__name__}: {exc}"
    return out


def verify_all() -> list[ExampleResult]:
    geometry.clear_caches()
    return [run_example(name, fn) for name, fn in EXAMPLES]
