"""Volume polynomials and mixed volumes of explicit rational polytopes.

Mixed volumes use inclusion-exclusion over Minkowski combinations,

    d! V(K_1^a_1, ..., K_n^a_n)
        = sum_{0 != b <= a} (-1)^(d - |b|) prod_i C(a_i, b_i) vol(b_1 K_1 + ... + b_n K_n),

with exact hull volumes (ambient dimension <= 3).  Families of segments
through the origin additionally have a determinant formula valid in any
dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import comb, factorial, prod
from typing import Mapping, Sequence

from . import hull
from .exact import det, dot, nullspace, orthogonalize, rank
from .poly import HomoPoly, compositions, format_fraction, multinomial, slices, to_fraction
from .report import FAIL, PASS, CertReport

Point = tuple[Fraction, ...]


class GeometryError(ValueError):
    pass


def _point(p) -> Point:
    return tuple(to_fraction(x) for x in p)


@dataclass(frozen=True)
class Body:
    """Convex hull of a nonempty list of rational vertices (possibly redundant)."""

    vertices: tuple[Point, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        verts = tuple(_point(v) for v in self.vertices)
        if not verts:
            raise GeometryError("a body needs at least one vertex")
        if len({len(v) for v in verts}) != 1:
            raise GeometryError("vertices of a body have inconsistent dimensions")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def segment(cls, u, start=None, name: str = "") -> Body:
        u = _point(u)
        start = _point(start) if start is not None else (Fraction(0),) * len(u)
        return cls((start, tuple(a + b for a, b in zip(start, u))), name)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def dim(self) -> int:
        base = self.vertices[0]
        return rank([[a - b for a, b in zip(v, base)] for v in self.vertices[1:]])

    def directions(self) -> list[Point]:
        base = self.vertices[0]
        return [tuple(a - b for a, b in zip(v, base)) for v in self.vertices[1:]]

    def segment_vector(self) -> Point | None:
        """Edge vector ``u`` if the body is a (1-dimensional) segment, else None."""
        if self.dim != 1:
            return None
        lo, hi = min(self.vertices), max(self.vertices)
        return tuple(b - a for a, b in zip(lo, hi))

    def translated(self, t) -> Body:
        t = _point(t)
        return Body(tuple(tuple(a + b for a, b in zip(v, t)) for v in self.vertices), self.name)

    def scaled(self, c) -> Body:
        c = to_fraction(c)
        return Body(tuple(tuple(c * a for a in v) for v in self.vertices), self.name)

    def normalized(self) -> Body:
        """Translate so the lexicographically smallest vertex sits at the origin."""
        low = min(self.vertices)
        return self.translated(tuple(-a for a in low))

    def canonical(self) -> Body:
        """Same body with redundant points removed (ambient dimension <= 3)."""
        return Body(tuple(hull.hull_points(self.vertices)), self.name)


@dataclass(frozen=True)
class BodySystem:
    bodies: tuple[Body, ...]
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "bodies", tuple(self.bodies))
        for b in self.bodies:
            if b.ambient_dim != self.dim:
                raise GeometryError(f"body {b.name or '?'} lives in R^{b.ambient_dim}, system is R^{self.dim}")

    @classmethod
    def of(cls, bodies: Sequence[Body]) -> BodySystem:
        if not bodies:
            raise GeometryError("a body system needs at least one body")
        return cls(tuple(bodies), bodies[0].ambient_dim)

    @property
    def n(self) -> int:
        return len(self.bodies)

    def is_full_dimensional(self) -> bool:
        """Whether the Minkowski sum of all bodies has affine dimension ``dim``."""
        return rank([v for b in self.bodies for v in b.directions()]) == self.dim

    def without(self, i: int) -> BodySystem:
        return BodySystem(self.bodies[:i] + self.bodies[i + 1:], self.dim)


@dataclass(frozen=True)
class SegmentFamily:
    """Segments ``conv(0, u_i)`` in ``R^dim``."""

    dim: int
    vectors: tuple[Point, ...]

    def __post_init__(self):
        vecs = tuple(_point(v) for v in self.vectors)
        for v in vecs:
            if len(v) != self.dim:
                raise GeometryError(f"vector {v} does not live in R^{self.dim}")
        object.__setattr__(self, "vectors", vecs)

    def to_system(self) -> BodySystem:
        return BodySystem(tuple(Body.segment(u, name=f"u{i + 1}") for i, u in enumerate(self.vectors)), self.dim)


def hull_volume(B: Body) -> Fraction:
    if B.ambient_dim > 3:
        raise GeometryError(f"hull volumes are limited to ambient dimension 3, got {B.ambient_dim}")
    return hull.hull_volume(B.vertices, B.ambient_dim)


def minkowski_sum(A: Body, B: Body) -> Body:
    if A.ambient_dim != B.ambient_dim:
        raise GeometryError("Minkowski summands live in different dimensions")
    pts = {tuple(a + b for a, b in zip(p, q)) for p in A.vertices for q in B.vertices}
    return Body(tuple(sorted(pts)))


@lru_cache(maxsize=65536)
def _combination_points(bodies: tuple[Body, ...], beta: tuple[int, ...]) -> tuple[Point, ...]:
    """Hull points of ``sum_i beta_i K_i`` with every ``K_i`` translated to contain 0."""
    j = max((i for i, b in enumerate(beta) if b), default=None)
    if j is None:
        return ((Fraction(0),) * bodies[0].ambient_dim,)
    prev = list(beta)
    prev[j] -= 1
    base = _combination_points(bodies, tuple(prev))
    body = _normalized_vertices(bodies[j])
    pts = {tuple(a + b for a, b in zip(p, q)) for p in base for q in body}
    return tuple(hull.hull_points(list(pts)))


@lru_cache(maxsize=4096)
def _normalized_vertices(body: Body) -> tuple[Point, ...]:
    return tuple(hull.hull_points(body.normalized().vertices))


@lru_cache(maxsize=65536)
def _combination_volume(bodies: tuple[Body, ...], beta: tuple[int, ...]) -> Fraction:
    return hull.hull_volume(_combination_points(bodies, beta), bodies[0].ambient_dim)


def clear_caches() -> None:
    _combination_points.cache_clear()
    _normalized_vertices.cache_clear()
    _combination_volume.cache_clear()


def _check_alpha(S: BodySystem, alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != S.n:
        raise GeometryError(f"alpha has {len(alpha)} entries for {S.n} bodies")
    if any(a < 0 for a in alpha) or sum(alpha) != S.dim:
        raise GeometryError(f"alpha {list(alpha)} must be nonnegative and sum to d={S.dim}")
    return alpha


def _segment_mixed_volume(S: BodySystem, alpha: tuple[int, ...]) -> Fraction | None:
    active = [i for i, a in enumerate(alpha) if a]
    if any(alpha[i] > S.bodies[i].dim for i in active):
        # a body repeated more often than its dimension contributes nothing
        return Fraction(0)
    if all(alpha[i] == 1 for i in active):
        vectors = [S.bodies[i].segment_vector() for i in active]
        if all(v is not None for v in vectors):
            return abs(det(vectors)) / factorial(S.dim)
    return None


def _inclusion_exclusion(S: BodySystem, alpha: tuple[int, ...]) -> Fraction:
    if S.dim > 3:
        raise GeometryError(f"general mixed volumes need ambient dimension <= 3, got {S.dim}")
    d = S.dim
    total = Fraction(0)
    for beta in product(*(range(a + 1) for a in alpha)):
        size = sum(beta)
        if size == 0:
            continue
        weight = prod(comb(a, b) for a, b in zip(alpha, beta))
        total += (-1) ** (d - size) * weight * _combination_volume(S.bodies, beta)
    return total / factorial(d)


def mixed_volume(S: BodySystem, alpha: Sequence[int], method: str = "auto") -> Fraction:
    """``V(K_1^alpha_1, ..., K_n^alpha_n)``.

    ``method`` is ``"auto"`` (segment/determinant shortcuts when they apply,
    inclusion-exclusion otherwise) or ``"inclusion-exclusion"``.
    """
    alpha = _check_alpha(S, alpha)
    if S.dim == 0:
        return Fraction(1)
    if method == "auto":
        quick = _segment_mixed_volume(S, alpha)
        if quick is not None:
            return quick
    elif method != "inclusion-exclusion":
        raise GeometryError(f"unknown mixed volume method {method!r}")
    return _inclusion_exclusion(S, alpha)


def volume_polynomial(S: BodySystem, method: str = "auto") -> HomoPoly:
    """``vol(x_1 K_1 + ... + x_n K_n) = sum_alpha (d!/alpha!) V_alpha x^alpha``."""
    terms = {alpha: multinomial(alpha) * mixed_volume(S, alpha, method) for alpha in compositions(S.n, S.dim)}
    return HomoPoly(S.n, S.dim, terms)


def zonotope_volume_polynomial(F: SegmentFamily) -> HomoPoly:
    """Multiaffine expansion ``sum_S |det(u_i : i in S)| x^S`` over d-subsets."""
    n, d = len(F.vectors), F.dim
    terms = {}
    for subset in combinations(range(n), d):
        value = abs(det([F.vectors[i] for i in subset]))
        if value:
            exp = [0] * n
            for i in subset:
                exp[i] = 1
            terms[tuple(exp)] = value
    return HomoPoly(n, d, terms)


def transform(S: BodySystem, A: Sequence[Sequence], translations: Sequence[Sequence] | None = None) -> BodySystem:
    """Apply ``x -> A x + a_i`` to body ``i``."""
    M = [[to_fraction(x) for x in row] for row in A]
    if len(M) != S.dim or any(len(row) != S.dim for row in M):
        raise GeometryError(f"transform needs a {S.dim}x{S.dim} matrix")
    if det(M) == 0:
        raise GeometryError("transform matrix is singular")
    if translations is None:
        translations = [(0,) * S.dim] * S.n
    if len(translations) != S.n:
        raise GeometryError("one translation per body is required")
    out = []
    for body, t in zip(S.bodies, translations):
        t = _point(t)
        verts = tuple(tuple(dot(row, v) + s for row, s in zip(M, t)) for v in body.vertices)
        out.append(Body(verts, body.name))
    return BodySystem(tuple(out), S.dim)


def _check_orthogonal(basis: Sequence[Sequence[Fraction]]) -> None:
    for i, j in combinations(range(len(basis)), 2):
        if dot(basis[i], basis[j]) != 0:
            raise GeometryError("projection basis is not orthogonal")
    if any(not any(b) for b in basis):
        raise GeometryError("projection basis contains a zero vector")


def project(B: Body, basis: Sequence[Sequence]) -> Body:
    """Orthogonal projection onto ``span(basis)`` in the coordinates of that basis.

    The basis must be pairwise orthogonal but need not be normalized; volumes
    measured in these coordinates are off by the factor ``prod |b_k|``.
    """
    basis = [_point(b) for b in basis]
    _check_orthogonal(basis)
    for b in basis:
        if len(b) != B.ambient_dim:
            raise GeometryError("basis vectors do not match the body's dimension")
    norms = [dot(b, b) for b in basis]
    verts = tuple(tuple(dot(v, b) / nb for b, nb in zip(basis, norms)) for v in B.vertices)
    if not basis:
        verts = ((),)
    return Body(verts, B.name)


def _all_ones_mixed_volume(bodies: Sequence[Body], dim: int) -> Fraction:
    if dim == 0:
        return Fraction(1)
    return mixed_volume(BodySystem(tuple(bodies), dim), (1,) * len(bodies))


def check_subspace_product(L: Sequence[Body], K: Sequence[Body], E: Sequence[int]) -> CertReport:
    """Verify ``C(d,k) V(L_1..L_k, K_1..K_{d-k}) = V_E(L) V_{E^perp}(K|E^perp)``.

    ``E`` is the list of (0-based) coordinate axes spanning the subspace that
    contains every ``L_i``.
    """
    bodies = list(L) + list(K)
    if not bodies:
        raise GeometryError("no bodies given")
    d = bodies[0].ambient_dim
    k = len(E)
    if len(L) != k or len(K) != d - k:
        raise GeometryError(f"need {k} bodies in E and {d - k} further bodies for d={d}")
    inside = set(E)
    for body in L:
        if any(v[c] != 0 for v in body.vertices for c in range(d) if c not in inside):
            raise GeometryError(f"body {body.name or '?'} is not contained in the subspace E")
    axes = [tuple(Fraction(int(c == a)) for c in range(d)) for a in range(d)]
    e_basis = [axes[a] for a in E]
    perp_basis = [axes[a] for a in range(d) if a not in inside]
    lhs = comb(d, k) * _all_ones_mixed_volume(bodies, d)
    rhs = _all_ones_mixed_volume([project(b, e_basis) for b in L], k) * _all_ones_mixed_volume(
        [project(b, perp_basis) for b in K], d - k
    )
    witness = {"lhs": lhs, "rhs": rhs, "k": k, "d": d}
    if lhs == rhs:
        return CertReport(PASS, detail=f"both sides equal {format_fraction(lhs)}", instances={"identity": 1})
    return CertReport(FAIL, witness, detail=f"{lhs} != {rhs}", instances={"identity": 1})


def _direction_space(B: Body) -> list[Point]:
    return orthogonalize(B.directions())


def volume_slices_check(S: BodySystem, i: int) -> CertReport:
    """Check both volume-polynomial slice identities for body ``i``.

    With ``f = sum_j x_i^(d-j) f_j`` and ``m = dim K_i``: ``f_d`` is the volume
    polynomial of the remaining bodies, and ``f_(d-m)`` equals
    ``vol_m(K_i)`` times the volume polynomial of the remaining bodies
    projected onto the orthogonal complement of ``K_i``'s direction space.
    """
    if not 0 <= i < S.n:
        raise GeometryError(f"body index {i} out of range")
    d = S.dim
    f = volume_polynomial(S)
    parts = slices(f, i)
    rest = S.without(i)
    top = volume_polynomial(rest) if rest.n else HomoPoly.zero(0, d)

    body = S.bodies[i]
    U = _direction_space(body)
    m = len(U)
    C = orthogonalize(nullspace(U, d)) if m < d else []
    scale = abs(det(list(U) + list(C))) if d else Fraction(1)
    own = hull.hull_volume(project(body, U).vertices, m) if m else Fraction(1)
    projected = [project(b, C) for b in rest.bodies]
    if d - m == 0:
        shadow = HomoPoly.constant(rest.n)
    else:
        shadow = volume_polynomial(BodySystem(tuple(projected), d - m))
    low = shadow.scale(own * scale)

    witness = {"m": m, "f": f}
    if parts[d] != top:
        return CertReport(FAIL, {**witness, "identity": "top", "slice": parts[d], "expected": top},
                          detail=f"f_{d} differs from the volume polynomial without body {i + 1}")
    if parts[d - m] != low:
        return CertReport(FAIL, {**witness, "identity": "projection", "slice": parts[d - m], "expected": low},
                          detail=f"f_{d - m} differs from vol_{m}(K) times the projected volume polynomial")
    return CertReport(PASS, detail=f"f_{d} and f_{d - m} (m={m}) match their geometric formulas",
                      instances={"identities": 2})


# serialization

def bodies_from_json(doc: Mapping) -> BodySystem:
    if "dim" not in doc or "bodies" not in doc:
        raise GeometryError("bodies document needs 'dim' and 'bodies'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise GeometryError(f"field 'dim' must be a nonnegative integer, got {dim!r}")
    bodies = []
    for k, entry in enumerate(doc["bodies"]):
        if "vertices" not in entry:
            raise GeometryError(f"bodies[{k}] is missing 'vertices'")
        bodies.append(Body(tuple(tuple(v) for v in entry["vertices"]), entry.get("name", f"K{k + 1}")))
    return BodySystem(tuple(bodies), dim)


def bodies_to_json(S: BodySystem) -> dict:
    return {
        "dim": S.dim,
        "bodies": [
            {"name": b.name, "vertices": [[format_fraction(x) for x in v] for v in b.vertices]}
            for b in S.bodies
        ],
    }


def segments_from_json(doc: Mapping) -> SegmentFamily:
    if "dim" not in doc or "vectors" not in doc:
        raise GeometryError("segment document needs 'dim' and 'vectors'")
    return SegmentFamily(doc["dim"], tuple(tuple(v) for v in doc["vectors"]))


def segments_to_json(F: SegmentFamily) -> dict:
    return {"dim": F.dim, "vectors": [[format_fraction(x) for x in v] for v in F.vectors]}
