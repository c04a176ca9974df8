"""Small exact linear algebra over Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if A[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            A[c], A[pivot] = A[pivot], A[c]
            sign = -sign
        p = A[c][c]
        result *= p
        for r in range(c + 1, n):
            if A[r][c]:
                factor = A[r][c] / p
                A[r] = [x - factor * y for x, y in zip(A[r], A[c])]
    return sign * result


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return [], []
    m = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                factor = A[i][c]
                A[i] = [x - factor * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def nullspace(rows: Sequence[Sequence], m: int) -> list[Vector]:
    """Basis of ``{x : rows @ x = 0}`` in ``Q^m``."""
    R, pivots = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * m
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def orthogonalize(vectors: Sequence[Sequence]) -> list[Vector]:
    """Gram-Schmidt without normalization; drops dependent vectors."""
    basis: list[Vector] = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for b in basis:
            coef = dot(w, b) / dot(b, b)
            w = [x - coef * y for x, y in zip(w, b)]
        if any(w):
            basis.append(tuple(w))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    R, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return [R[i][n] for i in range(n)]
