"""Numerical search for segment families with a prescribed zonotope volume polynomial.

A multiaffine target ``sum_S c_S x^S`` of degree ``d`` is realized by vectors
``u_1..u_n`` in ``R^d`` when ``|det(u_S)| = c_S`` for every ``d``-subset ``S``.
The search minimizes the smooth residual ``sum_S (det(u_S)^2 - c_S^2)^2`` from
many random starts.  A numeric hit is rationalized and checked exactly; a miss
is only ever reported as inconclusive.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .geometry import SegmentFamily, zonotope_volume_polynomial
from .poly import HomoPoly

REALIZED, INCONCLUSIVE = "Realized", "Inconclusive"

DEFAULT_TOL = 1e-9
DEFAULT_RESTARTS = 64
DEFAULT_MAX_ITER = 10_000
MAX_DENOMINATOR = 10**6


class RealizerError(ValueError):
    pass


@dataclass(frozen=True)
class SegmentConfig:
    d: int
    vectors: np.ndarray

    def __post_init__(self):
        arr = np.array(self.vectors, dtype=float).reshape(-1, self.d)
        object.__setattr__(self, "vectors", arr)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    def to_json(self) -> list[list[float]]:
        return self.vectors.tolist()


@dataclass
class RealizeOutcome:
    status: str
    witness: SegmentConfig | None
    residual: float
    restarts_used: int
    exact_verified: bool
    seed: int
    rational_witness: SegmentFamily | None = None

    @property
    def realized(self) -> bool:
        return self.status == REALIZED

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "residual": float(self.residual),
            "witness": None if self.witness is None else self.witness.to_json(),
            "exact_verified": self.exact_verified,
            "seed": self.seed,
            "restarts_used": self.restarts_used,
        }
        if self.rational_witness is not None:
            out["rational_witness"] = [[str(x) for x in v] for v in self.rational_witness.vectors]
        return out


def _target_table(target: HomoPoly, d: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Index array of all d-subsets (lexicographic) and the squared target coefficients."""
    if not target.is_multiaffine():
        raise RealizerError("target must be multiaffine (every exponent 0 or 1)")
    if d is not None and target.d != d:
        raise RealizerError(f"target has degree {target.d} but d = {d}")
    d = target.d
    if d < 1 or d > target.n:
        raise RealizerError(f"need 1 <= d <= n, got d = {d}, n = {target.n}")
    subsets = list(combinations(range(target.n), d))
    coeffs = []
    for S in subsets:
        exp = tuple(1 if i in S else 0 for i in range(target.n))
        coeffs.append(float(target.coeff(exp)))
    return np.array(subsets, dtype=np.intp), np.array(coeffs) ** 2


def _cofactors(U: np.ndarray) -> np.ndarray:
    """Cofactor matrices of a stack ``(..., d, d)``; ``d det/dU = cof(U)``."""
    d = U.shape[-1]
    if d == 1:
        return np.ones_like(U)
    if d == 2:
        cof = np.empty_like(U)
        cof[..., 0, 0] = U[..., 1, 1]
        cof[..., 0, 1] = -U[..., 1, 0]
        cof[..., 1, 0] = -U[..., 0, 1]
        cof[..., 1, 1] = U[..., 0, 0]
        return cof
    if d == 3:
        r0, r1, r2 = U[..., 0, :], U[..., 1, :], U[..., 2, :]
        return np.stack([np.cross(r1, r2), np.cross(r2, r0), np.cross(r0, r1)], axis=-2)
    cof = np.empty_like(U)
    for i in range(d):
        rows = [k for k in range(d) if k != i]
        for j in range(d):
            cols = [k for k in range(d) if k != j]
            minor = U[..., rows, :][..., :, cols]
            cof[..., i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return cof


def _objective(X: np.ndarray, subsets: np.ndarray, c2: np.ndarray, grad: bool = True):
    """Residuals and gradients for a batch ``X`` of shape ``(R, n, d)``."""
    U = X[:, subsets]  # (R, m, d, d)
    D = np.linalg.det(U)
    r = D**2 - c2
    f = np.sum(r**2, axis=1)
    if not grad:
        return f, None
    GU = (4 * r * D)[..., None, None] * _cofactors(U)
    G = np.zeros_like(X)
    for p in range(subsets.shape[1]):
        np.add.at(G, (slice(None), subsets[:, p]), GU[:, :, p, :])
    return f, G


def residual(C: SegmentConfig, target: HomoPoly) -> float:
    subsets, c2 = _target_table(target, C.d)
    if C.n != target.n:
        raise RealizerError(f"configuration has {C.n} vectors but the target has {target.n} variables")
    f, _ = _objective(C.vectors[None], subsets, c2, grad=False)
    return float(f[0])


def residual_gradient(C: SegmentConfig, target: HomoPoly) -> np.ndarray:
    subsets, c2 = _target_table(target, C.d)
    _, G = _objective(C.vectors[None], subsets, c2)
    return G[0]


def _descend(X: np.ndarray, subsets, c2, tol: float, max_iter: int) -> tuple[np.ndarray, np.ndarray]:
    """Gradient descent with per-start backtracking; returns final points and residuals."""
    R = X.shape[0]
    f, G = _objective(X, subsets, c2)
    step = np.full(R, 1e-2)
    active = np.ones(R, dtype=bool)
    best = f.copy()
    checkpoint = f.copy()
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        gg = np.sum(G[idx] ** 2, axis=(1, 2))
        trial = X[idx] - step[idx, None, None] * G[idx]
        ft, Gt = _objective(trial, subsets, c2)
        ok = np.isfinite(ft) & (ft <= f[idx] - 1e-4 * step[idx] * gg)
        acc = idx[ok]
        X[acc], f[acc], G[acc] = trial[ok], ft[ok], Gt[ok]
        step[acc] = np.minimum(step[acc] * 2, 1e6)
        step[idx[~ok]] *= 0.5
        best = np.minimum(best, f)
        done = (f <= tol * 1e-3) | (step < 1e-20) | (np.sum(G**2, axis=(1, 2)) < 1e-30)
        if it % 500 == 0:
            # stalled starts: less than 0.1% progress over the last window
            done |= best > checkpoint * (1 - 1e-3)
            checkpoint = best.copy()
        active &= ~done
    return X, f


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LORCERT_THREADS", "1")))
    except ValueError:
        return 1


def _gauge_fix(x: np.ndarray, subsets: np.ndarray, c2: np.ndarray) -> np.ndarray | None:
    """Map the vectors of the largest-coefficient subset to ``diag(c, 1, ..., 1)``."""
    order = np.argsort(-c2, kind="stable")
    for k in order:
        if c2[k] <= 0:
            break
        U = x[subsets[k]]
        detU = np.linalg.det(U)
        if abs(detU) < 1e-12:
            continue
        target = np.eye(x.shape[1])
        target[0, 0] = np.sqrt(c2[k])
        return x @ np.linalg.solve(U, target)
    return None


def rationalize(x: np.ndarray, target: HomoPoly) -> SegmentFamily | None:
    """Round a numeric witness at growing denominators until it is exactly right."""
    subsets, c2 = _target_table(target)
    candidates = [x]
    fixed = _gauge_fix(x, subsets, c2)
    if fixed is not None:
        candidates.insert(0, fixed)
    bound = 1
    while bound <= MAX_DENOMINATOR:
        for y in candidates:
            vecs = [[Fraction(float(v)).limit_denominator(bound) for v in row] for row in y]
            family = SegmentFamily(y.shape[1], vecs)
            if zonotope_volume_polynomial(family) == target:
                return family
        bound *= 10
    return None


def realize(
    target: HomoPoly,
    d: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RealizeOutcome:
    """Multi-start search for segments whose zonotope volume polynomial is ``target``."""
    if not (isinstance(restarts, int) and restarts >= 1):
        raise RealizerError(f"restarts must be a positive integer, got {restarts!r}")
    if not (tol > 0 and np.isfinite(tol)):
        raise RealizerError(f"tol must be positive and finite, got {tol!r}")
    if max_iter < 1:
        raise RealizerError(f"max_iter must be positive, got {max_iter!r}")
    if not target.has_nonnegative_coefficients():
        raise RealizerError("target must have nonnegative coefficients")
    subsets, c2 = _target_table(target, d)
    d = target.d
    n = target.n
    positive = c2[c2 > 0]
    scale = float(np.mean(positive) ** (1 / (2 * d))) if positive.size else 1.0
    rng = np.random.default_rng(seed)
    X0 = rng.standard_normal((restarts, n, d)) * scale

    workers = min(_threads(), restarts)
    chunks = np.array_split(np.arange(restarts), workers)
    results = [None] * len(chunks)

    def run(k):
        results[k] = _descend(X0[chunks[k]].copy(), subsets, c2, tol, max_iter)

    if workers == 1:
        run(0)
    else:
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(run, range(len(chunks))))
    X = np.concatenate([r[0] for r in results])
    f = np.concatenate([r[1] for r in results])
    f = np.where(np.isfinite(f), f, np.inf)
    b = int(np.argmin(f))  # first index wins ties
    witness = SegmentConfig(d, X[b])
    res = float(f[b])
    if res > tol:
        return RealizeOutcome(INCONCLUSIVE, witness, res, restarts, False, seed)
    family = rationalize(X[b], target)
    return RealizeOutcome(REALIZED, witness, res, restarts, family is not None, seed, family)
