"""Necessary conditions for volume polynomials, read off normalized coefficients.

Each family is phrased on the table ``V_alpha`` of a candidate polynomial
(see :func:`lorcert.poly.normalized_coeffs`), with mixed volumes
``V(K^alpha, K_i, ...)`` translated into index arithmetic on ``alpha``.

* ``AF``: ``V_a^2 >= V_{a-e_i+e_j} V_{a+e_i-e_j}`` whenever ``a_i, a_j > 0``.
* ``ShephardPower``: ``V_{a+(r-1)e_i+e_j} V_{a+e_i+(r-1)e_j} >= V_{a+r e_i} V_{a+r e_j}``
  for ``2 <= r <= d`` and ``a`` of degree ``d - r``.
* ``ShephardDet``: ``(-1)^r det(V_{b+e_i+e_j})_{i,j in S} <= 0`` for ``b`` of
  degree ``d - 2`` and every ``r``-subset ``S`` of the variables.
* ``RKT`` (reverse Khovanskii-Teissier): for distinct roles ``(a, b, c)`` and
  ``0 <= k <= d``,
  ``C(d,k) V_{(d-k)e_a+k e_b} V_{k e_a+(d-k)e_c} >= V_{d e_a} V_{k e_b+(d-k)e_c}``.

Instances are enumerated in a fixed order so the first failing witness is
deterministic.  Variable indices in witnesses are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Iterator

from .exact import det
from .poly import Exponent, NormalizedCoeffs, compositions
from .report import FAIL, PASS, CertReport, jsonable

AF, POWER, DET, RKT = "AF", "ShephardPower", "ShephardDet", "RKT"

SUBSET_NOTE = "ShephardDet ranges over every r-subset of the variables, not only the first r"


@dataclass(frozen=True)
class InequalityInstance:
    family: str
    indices: dict = field(hash=False)
    lhs: Fraction
    rhs: Fraction
    relation: str = ">="

    @property
    def satisfied(self) -> bool:
        return self.lhs >= self.rhs if self.relation == ">=" else self.lhs <= self.rhs

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "indices": jsonable(self.indices),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "relation": self.relation,
            "satisfied": self.satisfied,
        }


def _shift(alpha: Exponent, *moves: tuple[int, int]) -> Exponent:
    e = list(alpha)
    for i, k in moves:
        e[i] += k
    return tuple(e)


def af_instances(V: NormalizedCoeffs) -> Iterator[InequalityInstance]:
    for alpha in compositions(V.n, V.d):
        for i, j in combinations(range(V.n), 2):
            if alpha[i] > 0 and alpha[j] > 0:
                yield InequalityInstance(
                    AF,
                    {"alpha": alpha, "i": i + 1, "j": j + 1},
                    V[alpha] ** 2,
                    V[_shift(alpha, (i, -1), (j, 1))] * V[_shift(alpha, (i, 1), (j, -1))],
                )


def shephard_power_instances(V: NormalizedCoeffs) -> Iterator[InequalityInstance]:
    for r in range(2, V.d + 1):
        for alpha in compositions(V.n, V.d - r):
            for i, j in combinations(range(V.n), 2):
                yield InequalityInstance(
                    POWER,
                    {"r": r, "alpha": alpha, "i": i + 1, "j": j + 1},
                    V[_shift(alpha, (i, r - 1), (j, 1))] * V[_shift(alpha, (i, 1), (j, r - 1))],
                    V[_shift(alpha, (i, r))] * V[_shift(alpha, (j, r))],
                )


def gram_matrix(V: NormalizedCoeffs, beta: Exponent, subset) -> list[list[Fraction]]:
    return [[V[_shift(beta, (i, 1), (j, 1))] for j in subset] for i in subset]


def shephard_det_instances(V: NormalizedCoeffs) -> Iterator[InequalityInstance]:
    if V.d < 2:
        return
    for beta in compositions(V.n, V.d - 2):
        for r in range(1, V.n + 1):
            for subset in combinations(range(V.n), r):
                value = (-1) ** r * det(gram_matrix(V, beta, subset))
                yield InequalityInstance(
                    DET,
                    {"beta": beta, "r": r, "subset": [s + 1 for s in subset]},
                    value,
                    Fraction(0),
                    relation="<=",
                )


def rkt_instances(V: NormalizedCoeffs) -> Iterator[InequalityInstance]:
    n, d = V.n, V.d
    if n < 3:
        return
    for a, b, c in permutations(range(n), 3):
        for k in range(d + 1):
            yield InequalityInstance(
                RKT,
                {"roles": (a + 1, b + 1, c + 1), "k": k},
                comb(d, k) * V[_shift((0,) * n, (a, d - k), (b, k))] * V[_shift((0,) * n, (a, k), (c, d - k))],
                V[_shift((0,) * n, (a, d))] * V[_shift((0,) * n, (b, k), (c, d - k))],
            )


def _run(family: str, instances: Iterable[InequalityInstance]) -> CertReport:
    count = 0
    for inst in instances:
        count += 1
        if not inst.satisfied:
            return CertReport(
                FAIL,
                inst.to_json(),
                detail=f"{family} violated: {inst.lhs} {inst.relation} {inst.rhs} is false",
                instances={family: count},
            )
    detail = f"{count} {family} instances hold" if count else f"no {family} instances (vacuous)"
    return CertReport(PASS, detail=detail, instances={family: count})


def check_af(V: NormalizedCoeffs) -> CertReport:
    return _run(AF, af_instances(V))


def check_shephard_power(V: NormalizedCoeffs) -> CertReport:
    return _run(POWER, shephard_power_instances(V))


def check_shephard_det(V: NormalizedCoeffs) -> CertReport:
    report = _run(DET, shephard_det_instances(V))
    report.notes.append(SUBSET_NOTE)
    return report


def check_rkt(V: NormalizedCoeffs) -> CertReport:
    return _run(RKT, rkt_instances(V))


def check_af_class(V: NormalizedCoeffs) -> CertReport:
    """Conjunction of the AF, ShephardPower and ShephardDet families."""
    reports = [check_af(V), check_shephard_power(V), check_shephard_det(V)]
    counts: dict[str, int] = {}
    for r in reports:
        counts.update(r.instances)
    failed = next((r for r in reports if not r.passed), None)
    if failed is not None:
        return CertReport(FAIL, failed.witness, detail=failed.detail, instances=counts, notes=[SUBSET_NOTE])
    return CertReport(PASS, detail=f"all {sum(counts.values())} instances hold", instances=counts,
                      notes=[SUBSET_NOTE])
