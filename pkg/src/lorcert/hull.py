"""Exact convex hulls and volumes for rational point sets in dimension <= 3.

Points are scaled to integers by the common denominator, so every
orientation test is plain integer arithmetic.  Lower-dimensional inputs are
handled by projecting onto coordinates that are injective on the affine
hull; such sets have zero full-dimensional volume.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

IntPoint = tuple[int, int, int]


class HullError(ValueError):
    pass


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _det3(u, v, w):
    return _dot(u, _cross(v, w))


def _integerize(points: Sequence[Sequence[Fraction]]) -> tuple[list[IntPoint], int]:
    scale = lcm(*(Fraction(x).denominator for p in points for x in p)) if points else 1
    out = []
    for p in points:
        coords = [int(Fraction(x) * scale) for x in p] + [0] * (3 - len(p))
        out.append(tuple(coords))
    return out, scale


def _frame(P: list[IntPoint]) -> list[int]:
    """Indices of a maximal affinely independent subset chosen from extremes."""
    i0 = min(range(len(P)), key=lambda k: P[k])
    i1 = max(range(len(P)), key=lambda k: P[k])
    if P[i0] == P[i1]:
        return [i0]
    u = _sub(P[i1], P[i0])
    best, i2 = 0, None
    for k, p in enumerate(P):
        c = _cross(u, _sub(p, P[i0]))
        size = _dot(c, c)
        if size > best:
            best, i2 = size, k
    if i2 is None:
        return [i0, i1]
    v = _sub(P[i2], P[i0])
    best, i3 = 0, None
    for k, p in enumerate(P):
        vol = abs(_det3(u, v, _sub(p, P[i0])))
        if vol > best:
            best, i3 = vol, k
    return [i0, i1, i2] if i3 is None else [i0, i1, i2, i3]


def _chain2d(Q: list[tuple[int, int]]) -> list[int]:
    """Monotone chain; indices of strict hull vertices in counterclockwise order."""
    order = sorted(range(len(Q)), key=lambda k: Q[k])

    def turn(o, a, b):
        return (Q[a][0] - Q[o][0]) * (Q[b][1] - Q[o][1]) - (Q[a][1] - Q[o][1]) * (Q[b][0] - Q[o][0])

    lower: list[int] = []
    for k in order:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], k) <= 0:
            lower.pop()
        lower.append(k)
    upper: list[int] = []
    for k in reversed(order):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], k) <= 0:
            upper.pop()
        upper.append(k)
    return lower[:-1] + upper[:-1]


class _Hull3D:
    """Quickhull over integer points with exact visibility tests."""

    def __init__(self, P: list[IntPoint], frame: list[int]):
        self.P = P
        self.faces: dict[int, tuple[int, int, int, IntPoint, int]] = {}
        self.edges: dict[tuple[int, int], int] = {}
        self.outside: dict[int, list[int]] = {}
        self._next = 0
        t = frame
        for a, b, c, opp in ((t[0], t[1], t[2], t[3]), (t[0], t[1], t[3], t[2]),
                             (t[0], t[2], t[3], t[1]), (t[1], t[2], t[3], t[0])):
            n = _cross(_sub(P[b], P[a]), _sub(P[c], P[a]))
            if _dot(n, P[opp]) > _dot(n, P[a]):
                b, c = c, b
            self._add_face(a, b, c)
        initial = list(self.faces)
        for k in range(len(P)):
            if k in t:
                continue
            for fid in initial:
                if self._height(fid, k) > 0:
                    self.outside[fid].append(k)
                    break
        self._run()

    def _add_face(self, a, b, c) -> int:
        P = self.P
        n = _cross(_sub(P[b], P[a]), _sub(P[c], P[a]))
        fid = self._next
        self._next += 1
        self.faces[fid] = (a, b, c, n, _dot(n, P[a]))
        for e in ((a, b), (b, c), (c, a)):
            self.edges[e] = fid
        self.outside[fid] = []
        return fid

    def _height(self, fid: int, k: int) -> int:
        _, _, _, n, off = self.faces[fid]
        return _dot(n, self.P[k]) - off

    def _run(self) -> None:
        stack = [f for f, pts in self.outside.items() if pts]
        while stack:
            fid = stack.pop()
            if fid not in self.faces or not self.outside[fid]:
                continue
            apex = max(self.outside[fid], key=lambda k: (self._height(fid, k), self.P[k]))
            visible = {fid}
            queue = [fid]
            seen = {fid: True}
            horizon = []
            while queue:
                f = queue.pop()
                a, b, c, _, _ = self.faces[f]
                for e in ((a, b), (b, c), (c, a)):
                    g = self.edges[(e[1], e[0])]
                    if g not in seen:
                        seen[g] = self._height(g, apex) > 0
                        if seen[g]:
                            visible.add(g)
                            queue.append(g)
                    if not seen[g]:
                        horizon.append(e)
            orphans = []
            for f in visible:
                a, b, c, _, _ = self.faces.pop(f)
                orphans.extend(k for k in self.outside.pop(f) if k != apex)
                for e in ((a, b), (b, c), (c, a)):
                    if self.edges.get(e) == f:
                        del self.edges[e]
            new = [self._add_face(a, b, apex) for a, b in horizon]
            for k in orphans:
                for f in new:
                    if self._height(f, k) > 0:
                        self.outside[f].append(k)
                        break
            stack.extend(f for f in new if self.outside[f])

    def vertex_indices(self) -> set[int]:
        return {v for a, b, c, _, _ in self.faces.values() for v in (a, b, c)}

    def volume6(self) -> int:
        """Six times the enclosed volume (integer), fanned from the lexicographically smallest vertex."""
        o = self.P[min(self.vertex_indices(), key=lambda k: self.P[k])]
        total = 0
        for a, b, c, _, _ in self.faces.values():
            total += _det3(_sub(self.P[a], o), _sub(self.P[b], o), _sub(self.P[c], o))
        return total


def _unique(points: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    seen = {}
    for p in points:
        seen.setdefault(tuple(Fraction(x) for x in p), None)
    return list(seen)


def affine_dimension(points: Sequence[Sequence]) -> int:
    pts = _unique(points)
    if not pts:
        raise HullError("empty point set")
    if len(pts[0]) > 3:
        from .exact import rank

        return rank([[x - y for x, y in zip(p, pts[0])] for p in pts[1:]])
    P, _ = _integerize(pts)
    return len(_frame(P)) - 1


def hull_points(points: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Points of the input that span the convex hull (all vertices, in a stable order).

    Every vertex is returned; for full-dimensional 3D input a few boundary
    points lying on facets may survive as well.
    """
    pts = _unique(points)
    if not pts:
        raise HullError("empty point set")
    dim = len(pts[0])
    if dim > 3:
        raise HullError(f"hulls are supported in ambient dimension <= 3, got {dim}")
    P, _ = _integerize(pts)
    frame = _frame(P)
    k = len(frame) - 1
    if k == 0:
        keep = [frame[0]]
    elif k == 1:
        keep = sorted(frame[:2], key=lambda i: P[i])
    elif k == 2:
        normal = _cross(_sub(P[frame[1]], P[frame[0]]), _sub(P[frame[2]], P[frame[0]]))
        drop = max(range(3), key=lambda c: abs(normal[c]))
        axes = [c for c in range(3) if c != drop]
        keep = _chain2d([(p[axes[0]], p[axes[1]]) for p in P])
    else:
        keep = sorted(_Hull3D(P, frame).vertex_indices())
    return [pts[i] for i in keep]


def hull_volume(points: Sequence[Sequence], dim: int | None = None) -> Fraction:
    """Exact ``dim``-dimensional volume of the convex hull (0 if lower-dimensional)."""
    pts = _unique(points)
    if not pts:
        raise HullError("empty point set")
    dim = len(pts[0]) if dim is None else dim
    if dim == 0:
        return Fraction(1)
    if dim > 3:
        raise HullError(f"volumes are supported in ambient dimension <= 3, got {dim}")
    P, scale = _integerize(pts)
    frame = _frame(P)
    if len(frame) - 1 < dim:
        return Fraction(0)
    if dim == 1:
        xs = [p[0] for p in P]
        return Fraction(max(xs) - min(xs), scale)
    if dim == 2:
        Q = [(p[0], p[1]) for p in P]
        ring = [Q[i] for i in _chain2d(Q)]
        twice = sum(ring[i][0] * ring[i - 1][1] - ring[i - 1][0] * ring[i][1] for i in range(len(ring)))
        return Fraction(abs(twice), 2 * scale**2)
    return Fraction(_Hull3D(P, frame).volume6(), 6 * scale**3)
