"""Structured factorizations and the inferences they license.

Two shapes are recognized without general polynomial factorization:

* disjoint-variable splits ``f = g(x) h(y)``, found by setting one block of
  variables to 1 and testing homogeneity of what remains;
* monomial powers ``f = x_i^k g`` with ``x_i`` not dividing ``g``.  The
  inheritance results for ``g`` need the gate ``deg_i(g) <= 1``.

:func:`infer` chains these with the necessary certificates and records every
step with the rule tag that licenses it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm

from .geometry import BodySystem, volume_polynomial
from .inequalities import check_af_class, check_rkt
from .lorentzian import is_lorentzian
from .poly import HomoPoly, divide_by_monomial, embed, mul, normalized_coeffs, restrict, to_text
from .report import jsonable

RULES = ("Prop2.1", "Prop2.2", "Prop2.4", "Prop2.5", "Cor2.3", "Cor2.6", "contrapositive")

MAX_SPLIT_VARIABLES = 12


class FactorError(ValueError):
    pass


def primitive_part(f: HomoPoly) -> tuple[Fraction, HomoPoly]:
    """``(content, p)`` with ``f = content * p`` and ``p`` integral with coprime coefficients."""
    if f.is_zero():
        return Fraction(0), f
    coeffs = list(f.terms.values())
    num = reduce(gcd, (c.numerator for c in coeffs))
    den = lcm(*(c.denominator for c in coeffs))
    content = Fraction(num, den)
    if f.sorted_terms()[0][1] < 0:
        content = -content
    return content, f.scale(1 / content)


@dataclass(frozen=True)
class SplitResult:
    g: HomoPoly
    h: HomoPoly
    scale: Fraction
    partition: tuple[tuple[int, ...], tuple[int, ...]]

    def reassemble(self) -> HomoPoly:
        return mul(*self.embedded()).scale(self.scale)

    def embedded(self) -> tuple[HomoPoly, HomoPoly]:
        """Both factors written in the variables of the original polynomial."""
        left, right = self.partition
        n = len(left) + len(right)
        return embed(self.g, left, n), embed(self.h, right, n)

    def to_json(self) -> dict:
        left, right = self.partition
        g, h = self.embedded()
        return {
            "partition": [[i + 1 for i in left], [i + 1 for i in right]],
            "g": to_text(g),
            "h": to_text(h),
            "scale": jsonable(self.scale),
        }


def split_disjoint(f: HomoPoly, partition) -> SplitResult | None:
    """Try ``f = scale * g(x_V1) * h(x_V2)``; ``None`` when no such split exists.

    ``g`` and ``h`` are returned as primitive integral polynomials in their own
    variables (ordered as in ``V1`` and ``V2``); ``scale`` absorbs the rest.
    """
    left, right = (tuple(sorted(int(i) for i in side)) for side in partition)
    if not left or not right:
        raise FactorError("both sides of the partition must be nonempty")
    if sorted(left + right) != list(range(f.n)):
        raise FactorError(f"{[list(left), list(right)]} is not a partition of the {f.n} variables")
    if f.is_zero():
        raise FactorError("cannot split the zero polynomial")
    g = restrict(f, left, {j: 1 for j in right})
    h = restrict(f, right, {i: 1 for i in left})
    if g is None or h is None or g.is_zero() or h.is_zero():
        return None
    _, g = primitive_part(g)
    _, h = primitive_part(h)
    product = mul(embed(g, left, f.n), embed(h, right, f.n))
    if product.d != f.d:
        return None
    exp, c = f.sorted_terms()[0]
    denom = product.coeff(exp)
    if denom == 0:
        return None
    scale = c / denom
    if product.scale(scale) != f:
        return None
    return SplitResult(g, h, scale, (left, right))


def find_disjoint_split(f: HomoPoly) -> list[SplitResult]:
    """All bipartitions (up to swapping sides) with a split into two nonconstant factors."""
    if f.n > MAX_SPLIT_VARIABLES:
        raise FactorError(f"split enumeration is limited to {MAX_SPLIT_VARIABLES} variables")
    found = []
    rest = list(range(1, f.n))
    for size in range(0, len(rest)):
        for extra in combinations(rest, size):
            left = (0,) + extra
            right = tuple(i for i in rest if i not in extra)
            result = split_disjoint(f, (left, right))
            if result is not None and result.g.d > 0 and result.h.d > 0:
                found.append(result)
    return found


@dataclass(frozen=True)
class PowerFactor:
    i: int
    k: int
    g: HomoPoly
    gate: bool

    def to_json(self) -> dict:
        return {"var": self.i + 1, "k": self.k, "g": to_text(self.g), "gate": self.gate}


def extract_power_factor(f: HomoPoly, i: int) -> PowerFactor:
    """Write ``f = x_i^k g`` with ``k`` maximal; the gate is ``deg_i(g) <= 1``."""
    if f.is_zero():
        raise FactorError("the zero polynomial has no power factor")
    k = f.min_degree_in_var(i)
    g = divide_by_monomial(f, i, k)
    return PowerFactor(i, k, g, g.degree_in_var(i) <= 1)


@dataclass
class Step:
    rule: str
    premise: str
    conclusion: str
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")

    def to_json(self) -> dict:
        return {"rule": self.rule, "premise": self.premise, "conclusion": self.conclusion, **jsonable(self.extra)}


@dataclass
class InferenceReport:
    polynomial: HomoPoly
    lorentzian: bool
    volume: bool | None
    derivation: list[Step] = field(default_factory=list)
    certificates: dict[str, str] = field(default_factory=dict)

    @property
    def volume_label(self) -> str:
        return {True: "volume polynomial", False: "not a volume polynomial", None: "unknown"}[self.volume]

    def to_json(self) -> dict:
        return {
            "polynomial": to_text(self.polynomial),
            "lorentzian": self.lorentzian,
            "volume": {True: "yes", False: "no", None: "unknown"}[self.volume],
            "certificates": dict(self.certificates),
            "derivation": [s.to_json() for s in self.derivation],
        }


def _necessary_failures(f: HomoPoly) -> list[str]:
    """Names of necessary volume-polynomial certificates that ``f`` fails."""
    failed = []
    if not is_lorentzian(f).passed:
        failed.append("Lorentzian")
    if f.d >= 1:
        V = normalized_coeffs(f)
        if not check_rkt(V).passed:
            failed.append("reverse Khovanskii-Teissier")
        if not check_af_class(V).passed:
            failed.append("AF class")
    return failed


def infer(
    f: HomoPoly,
    lorentzian: bool | None = None,
    volume_witness: BodySystem | None = None,
) -> InferenceReport:
    """Mechanically apply the factor inheritance rules and their contrapositives.

    ``lorentzian`` may be passed when already certified; otherwise it is
    decided here.  A ``volume_witness`` is accepted only if its volume
    polynomial equals ``f`` exactly.
    """
    if f.is_zero():
        raise FactorError("cannot infer anything about the zero polynomial")
    lor_report = is_lorentzian(f)
    is_lor = lor_report.passed if lorentzian is None else bool(lorentzian)
    report = InferenceReport(f, is_lor, None)
    report.certificates["lorentzian"] = lor_report.verdict
    if f.d >= 1:
        V = normalized_coeffs(f)
        report.certificates["rkt"] = check_rkt(V).verdict
        report.certificates["af_class"] = check_af_class(V).verdict

    if volume_witness is not None:
        if volume_polynomial(volume_witness) != f:
            raise FactorError("the supplied bodies do not have f as their volume polynomial")
        report.volume = True
        report.certificates["volume_witness"] = "pass"

    failures = _necessary_failures(f)
    if failures and report.volume is not True:
        report.volume = False
        for name in failures:
            report.derivation.append(Step(
                "contrapositive",
                f"f fails the {name} certificate, which every volume polynomial passes",
                "f is not a volume polynomial",
            ))

    for split in find_disjoint_split(f) if f.n <= MAX_SPLIT_VARIABLES else []:
        g_full, h_full = split.embedded()
        label = f"f = {split.scale} * ({to_text(g_full)}) * ({to_text(h_full)})"
        if report.lorentzian:
            report.derivation.append(Step("Prop2.1", f"{label}; f is Lorentzian", "both factors are Lorentzian",
                                          {"split": split}))
        if report.volume:
            report.derivation.append(Step("Prop2.4", f"{label}; f is a volume polynomial",
                                          "both factors are volume polynomials", {"split": split}))
        for factor, shown in ((split.g, g_full), (split.h, h_full)):
            bad = _necessary_failures(factor)
            if bad and report.volume is not True:
                report.volume = False
                report.derivation.append(Step(
                    "contrapositive",
                    f"{label}; factor {to_text(shown)} fails the {bad[0]} certificate (Prop2.4)",
                    "f is not a volume polynomial",
                    {"split": split},
                ))

    for i in range(f.n):
        power = extract_power_factor(f, i)
        if power.k == 0 or power.g.d == 0:
            continue
        label = f"f = x{i + 1}^{power.k} * ({to_text(power.g)})"
        if power.gate:
            if report.lorentzian:
                report.derivation.append(Step("Prop2.2", f"{label}, deg_{i + 1}(g) <= 1; f is Lorentzian",
                                              "g is Lorentzian", {"power": power}))
            if report.volume:
                report.derivation.append(Step("Prop2.5", f"{label}, deg_{i + 1}(g) <= 1; f is a volume polynomial",
                                              "g is a volume polynomial", {"power": power}))
        bad = _necessary_failures(power.g)
        if not bad or report.volume is True:
            continue
        if power.gate:
            report.volume = False
            report.derivation.append(Step(
                "contrapositive",
                f"{label}, deg_{i + 1}(g) <= 1; g fails the {bad[0]} certificate (Prop2.5)",
                "f is not a volume polynomial",
                {"power": power},
            ))
        elif "Lorentzian" not in bad:
            # Gate not met.  Only the shape used by the classification argument is
            # accepted: g Lorentzian but failing a volume-only certificate.  A
            # non-Lorentzian quotient proves nothing (x(x^2+3xy+3y^2) is a volume
            # polynomial).
            report.volume = False
            report.derivation.append(Step(
                "Prop2.5",
                f"{label}; g is Lorentzian but fails the {bad[0]} certificate; "
                f"deg_{i + 1}(g) = {power.g.degree_in_var(i)}",
                "f is not a volume polynomial",
                {"power": power, "gate": False, "route": "classification-argument"},
            ))
    return report
