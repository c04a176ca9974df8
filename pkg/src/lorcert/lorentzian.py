"""Exact Lorentzian certification: M-convex supports and Hessian inertia.

Everything here is decided over the rationals.  Eigenvalue signs come from
the characteristic polynomial (Berkowitz, division free) and Descartes' rule
of signs, which counts positive roots exactly for real-rooted polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Sequence

from .poly import Exponent, HomoPoly, PolyError, compositions, partial, unit
from .report import FAIL, PASS, ZERO, CertReport

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_zero: int
    n_neg: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_pos, self.n_zero, self.n_neg)

    def to_json(self) -> list[int]:
        return list(self.as_tuple())


def is_mconvex(support: Collection[Sequence[int]]) -> CertReport:
    """Brute-force symmetric exchange test over all ordered pairs.

    Pairs are scanned in descending lexicographic order; the witness reports
    the first ``(alpha, beta, i)`` with no valid exchange index (``i`` 1-based).
    """
    points = sorted({tuple(a) for a in support}, reverse=True)
    if points:
        n, d = len(points[0]), sum(points[0])
        for p in points:
            if len(p) != n or sum(p) != d:
                raise PolyError("support mixes exponent lengths or degrees")
    members = set(points)
    checked = 0
    for alpha in points:
        for beta in points:
            if alpha == beta:
                continue
            for i, (ai, bi) in enumerate(zip(alpha, beta)):
                if ai <= bi:
                    continue
                checked += 1
                if not any(
                    alpha[j] < beta[j]
                    and _exchange(alpha, i, j) in members
                    and _exchange(beta, j, i) in members
                    for j in range(len(alpha))
                ):
                    return CertReport(
                        FAIL,
                        {"alpha": alpha, "beta": beta, "i": i + 1},
                        detail=f"no exchange index j for alpha={list(alpha)}, beta={list(beta)}, i={i + 1}",
                        instances={"exchanges": checked},
                    )
    return CertReport(PASS, detail=f"support of size {len(points)} is M-convex",
                      instances={"exchanges": checked})


def _exchange(a: Exponent, out: int, into: int) -> Exponent:
    e = list(a)
    e[out] -= 1
    e[into] += 1
    return tuple(e)


def hessian(q: HomoPoly) -> Matrix:
    """Constant Hessian of a quadratic form."""
    if q.d != 2:
        raise PolyError(f"hessian needs a degree-2 polynomial, got degree {q.d}")
    n = q.n
    H = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            exp = tuple(a + b for a, b in zip(unit(n, i), unit(n, j)))
            value = q.coeff(exp) * (2 if i == j else 1)
            H[i][j] = H[j][i] = value
    return H


def charpoly(M: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(t I - M)`` via Berkowitz."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(1)]
    for k in range(n - 1, -1, -1):
        # A = [[a, R], [C, A1]] with A1 the trailing block whose polynomial is `coeffs`
        a = A[k][k]
        R = A[k][k + 1:]
        C = [A[r][k] for r in range(k + 1, n)]
        A1 = [row[k + 1:] for row in A[k + 1:]]
        m = n - k
        col = [Fraction(1), -a]
        v = C
        for _ in range(m - 1):
            col.append(-sum((r * x for r, x in zip(R, v)), Fraction(0)))
            v = [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in A1]
        col = col[: m + 1]
        coeffs = [
            sum((col[i - j] * coeffs[j] for j in range(len(coeffs)) if 0 <= i - j < len(col)), Fraction(0))
            for i in range(m + 1)
        ]
    return coeffs


def sign_variations(seq: Sequence[Fraction]) -> int:
    signs = [1 if x > 0 else -1 for x in seq if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def is_symmetric(M: Sequence[Sequence]) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and all(
        M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n)
    )


def inertia(M: Sequence[Sequence]) -> Inertia:
    """Exact eigenvalue sign counts of a symmetric rational matrix."""
    if not is_symmetric(M):
        raise ValueError("inertia requires a symmetric matrix")
    n = len(M)
    p = charpoly(M)
    n_zero = 0
    while n_zero < n and p[n - n_zero] == 0:
        n_zero += 1
    n_pos = sign_variations(p)
    return Inertia(n_pos, n_zero, n - n_pos - n_zero)


def is_lorentzian(f: HomoPoly) -> CertReport:
    """Decide membership in the Lorentzian class.

    Checks, in order: nonnegative coefficients, M-convex support, and for
    ``d >= 2`` that every ``(d-2)``-fold derivative has a Hessian with at most
    one positive eigenvalue.  Constants with a positive coefficient pass.
    """
    if f.is_zero():
        return CertReport(ZERO, detail="the zero polynomial is not certified")
    for exp, c in f.sorted_terms():
        if c < 0:
            return CertReport(FAIL, {"condition": "nonnegativity", "exponent": exp, "coeff": c},
                              detail=f"negative coefficient {c} at {list(exp)}")
    support_report = is_mconvex(f.support())
    if not support_report.passed:
        return CertReport(FAIL, {"condition": "mconvex", **support_report.witness},
                          detail="support is not M-convex: " + support_report.detail,
                          instances=support_report.instances)
    count = 0
    if f.d >= 2:
        for alpha in compositions(f.n, f.d - 2):
            H = hessian(partial(f, alpha))
            signature = inertia(H)
            count += 1
            if signature.n_pos > 1:
                return CertReport(
                    FAIL,
                    {"condition": "hessian", "alpha": alpha, "inertia": signature.as_tuple(), "hessian": H},
                    detail=f"Hessian of d^{list(alpha)} f has inertia {signature.as_tuple()}",
                    instances={"hessians": count},
                )
    return CertReport(PASS, detail=f"Lorentzian (n={f.n}, d={f.d}, {count} Hessians checked)",
                      instances={"hessians": count})
