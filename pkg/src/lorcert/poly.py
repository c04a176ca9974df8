"""Exact sparse homogeneous polynomials over the rationals.

A :class:`HomoPoly` in ``n`` variables of degree ``d`` stores a map from
exponent tuples (each summing to ``d``) to nonzero :class:`~fractions.Fraction`
coefficients.  The zero polynomial is an empty map that still carries its
``(n, d)`` tag, since derivatives and slices routinely produce it.

Variable indices are 0-based in the Python API.  The text syntax and every
human-facing report use the 1-based names ``x1 ... xn``.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]


class PolyError(ValueError):
    """Malformed polynomial input or incompatible operands."""


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction.

    Floats are rejected because they would silently leak rounding error into
    exact certificates.
    """
    if isinstance(value, bool):
        raise PolyError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
            raise PolyError(f"malformed rational {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise PolyError(f"zero denominator in {value!r}") from None
    raise PolyError(f"not a rational: {value!r}")


def format_fraction(q: Fraction) -> str:
    """Canonical reduced ``"p/q"`` (or integer) string."""
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def compositions(n: int, d: int) -> Iterator[Exponent]:
    """All exponent vectors of length ``n`` summing to ``d``.

    Yields in descending lexicographic order, so ``(d, 0, ..., 0)`` comes
    first.  This is the fixed enumeration order used for witness reporting.
    """
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in compositions(n - 1, d - first):
            yield (first,) + rest


def multinomial(alpha: Sequence[int]) -> int:
    """``|alpha|! / alpha!``."""
    return factorial(sum(alpha)) // prod(factorial(a) for a in alpha)


def alpha_factorial(alpha: Sequence[int]) -> int:
    return prod(factorial(a) for a in alpha)


def unit(n: int, i: int, k: int = 1) -> Exponent:
    e = [0] * n
    e[i] = k
    return tuple(e)


@dataclass(frozen=True, eq=False)
class HomoPoly:
    n: int
    d: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0 or self.d < 0:
            raise PolyError(f"invalid shape n={self.n}, d={self.d}")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.n:
                raise PolyError(f"exponent {exp} has length {len(exp)}, expected {self.n}")
            if any(e < 0 for e in exp):
                raise PolyError(f"negative exponent in {exp}")
            if sum(exp) != self.d:
                raise PolyError(f"term {exp} has degree {sum(exp)}, expected {self.d}")
            coeff = to_fraction(coeff)
            if coeff:
                clean[exp] = coeff
        object.__setattr__(self, "terms", MappingProxyType(clean))

    # construction helpers

    @classmethod
    def zero(cls, n: int, d: int) -> HomoPoly:
        return cls(n, d, {})

    @classmethod
    def constant(cls, n: int, c=1) -> HomoPoly:
        return cls(n, 0, {(0,) * n: to_fraction(c)})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> HomoPoly:
        exp = tuple(exp)
        return cls(len(exp), sum(exp), {exp: to_fraction(coeff)})

    @classmethod
    def variable(cls, n: int, i: int) -> HomoPoly:
        return cls.monomial(unit(n, i))

    @classmethod
    def linear(cls, coeffs: Sequence) -> HomoPoly:
        n = len(coeffs)
        return cls(n, 1, {unit(n, i): to_fraction(c) for i, c in enumerate(coeffs)})

    @classmethod
    def from_terms(cls, n: int, d: int, items: Iterable[tuple[Sequence[int], object]]) -> HomoPoly:
        """Build from ``(exponent, coeff)`` pairs, summing duplicate exponents."""
        acc: dict[Exponent, Fraction] = defaultdict(Fraction)
        for exp, coeff in items:
            exp = tuple(exp)
            if len(exp) != n:
                raise PolyError(f"exponent {list(exp)} has length {len(exp)}, expected n={n}")
            if any(e < 0 for e in exp):
                raise PolyError(f"negative exponent in {list(exp)}")
            if sum(exp) != d:
                raise PolyError(f"non-homogeneous term {list(exp)}: degree {sum(exp)} != d={d}")
            acc[exp] += to_fraction(coeff)
        return cls(n, d, acc)

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def support(self) -> frozenset[Exponent]:
        return frozenset(self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), reverse=True)

    def degree_in_var(self, i: int) -> int:
        """Largest exponent of variable ``i`` over the support (0 for the zero polynomial)."""
        self._check_var(i)
        return max((exp[i] for exp in self.terms), default=0)

    def min_degree_in_var(self, i: int) -> int:
        self._check_var(i)
        return min((exp[i] for exp in self.terms), default=0)

    def is_multiaffine(self) -> bool:
        return all(e <= 1 for exp in self.terms for e in exp)

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n:
            raise PolyError(f"point has {len(point)} coordinates, expected {self.n}")
        pt = [to_fraction(x) if not isinstance(x, Fraction) else x for x in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            total += c * prod(x**e for x, e in zip(pt, exp) if e)
        return total

    def _check_var(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise PolyError(f"variable index {i} out of range for n={self.n}")

    # arithmetic

    def _same_space(self, other: HomoPoly) -> None:
        if self.n != other.n or self.d != other.d:
            raise PolyError(f"shape mismatch: (n={self.n}, d={self.d}) vs (n={other.n}, d={other.d})")

    def __add__(self, other: HomoPoly) -> HomoPoly:
        self._same_space(other)
        acc = dict(self.terms)
        for exp, c in other.terms.items():
            acc[exp] = acc.get(exp, 0) + c
        return HomoPoly(self.n, self.d, acc)

    def __neg__(self) -> HomoPoly:
        return HomoPoly(self.n, self.d, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: HomoPoly) -> HomoPoly:
        return self + (-other)

    def scale(self, c) -> HomoPoly:
        c = to_fraction(c)
        return HomoPoly(self.n, self.d, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HomoPoly):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __pow__(self, k: int) -> HomoPoly:
        result = HomoPoly.constant(self.n)
        for _ in range(k):
            result = mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomoPoly):
            return NotImplemented
        return self.n == other.n and self.d == other.d and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.n, self.d, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"HomoPoly(n={self.n}, d={self.d}, {to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


def mul(f: HomoPoly, g: HomoPoly) -> HomoPoly:
    if f.n != g.n:
        raise PolyError(f"cannot multiply polynomials in {f.n} and {g.n} variables")
    acc: dict[Exponent, Fraction] = defaultdict(Fraction)
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            acc[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
    return HomoPoly(f.n, f.d + g.d, acc)


def substitute_linear(f: HomoPoly, A: Sequence[Sequence]) -> HomoPoly:
    """Return ``f(A y)`` for an ``n x m`` matrix ``A`` with nonnegative entries.

    Row ``i`` of ``A`` is the linear form substituted for ``x_i``.
    """
    if len(A) != f.n:
        raise PolyError(f"matrix has {len(A)} rows, expected n={f.n}")
    rows = [[to_fraction(a) for a in row] for row in A]
    m = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != m:
            raise PolyError("matrix rows have unequal length")
        if any(a < 0 for a in row):
            raise PolyError("substitution matrix has a negative entry")
    forms = [HomoPoly.linear(row) for row in rows]
    powers: dict[tuple[int, int], HomoPoly] = {}

    def power(i: int, k: int) -> HomoPoly:
        if (i, k) not in powers:
            powers[i, k] = HomoPoly.constant(m) if k == 0 else mul(power(i, k - 1), forms[i])
        return powers[i, k]

    result = HomoPoly.zero(m, f.d)
    for exp, c in f.terms.items():
        term = HomoPoly.constant(m, c)
        for i, k in enumerate(exp):
            if k:
                term = mul(term, power(i, k))
        result = result + term
    return result


def partial(f: HomoPoly, alpha: Sequence[int]) -> HomoPoly:
    """Iterated partial derivative ``d^alpha f``."""
    alpha = tuple(alpha)
    if len(alpha) != f.n:
        raise PolyError(f"derivative multi-index has length {len(alpha)}, expected {f.n}")
    if any(a < 0 for a in alpha):
        raise PolyError(f"negative derivative order in {alpha}")
    k = sum(alpha)
    if k > f.d:
        raise PolyError(f"derivative order {k} exceeds degree {f.d}")
    out = {}
    for exp, c in f.terms.items():
        if all(e >= a for e, a in zip(exp, alpha)):
            falling = prod(factorial(e) // factorial(e - a) for e, a in zip(exp, alpha))
            out[tuple(e - a for e, a in zip(exp, alpha))] = c * falling
    return HomoPoly(f.n, f.d - k, out)


def slices(f: HomoPoly, i: int) -> list[HomoPoly]:
    """Split ``f = sum_j x_i^(d-j) f_j`` and return ``[f_0, ..., f_d]``.

    Each ``f_j`` lives in the remaining ``n - 1`` variables and has degree ``j``.
    """
    f._check_var(i)
    parts: list[dict[Exponent, Fraction]] = [{} for _ in range(f.d + 1)]
    for exp, c in f.terms.items():
        parts[f.d - exp[i]][exp[:i] + exp[i + 1:]] = c
    return [HomoPoly(f.n - 1, j, parts[j]) for j in range(f.d + 1)]


def assemble_slices(parts: Sequence[HomoPoly], i: int) -> HomoPoly:
    """Inverse of :func:`slices`: rebuild ``sum_j x_i^(d-j) f_j``."""
    d = len(parts) - 1
    n = parts[0].n + 1
    out = {}
    for j, part in enumerate(parts):
        for exp, c in part.terms.items():
            out[exp[:i] + (d - j,) + exp[i:]] = c
    return HomoPoly(n, d, out)


def divide_by_monomial(f: HomoPoly, i: int, k: int) -> HomoPoly:
    """Exact quotient ``f / x_i^k``; raises if some term is not divisible."""
    f._check_var(i)
    out = {}
    for exp, c in f.terms.items():
        if exp[i] < k:
            raise PolyError(f"x{i + 1}^{k} does not divide the term {list(exp)}")
        e = list(exp)
        e[i] -= k
        out[tuple(e)] = c
    return HomoPoly(f.n, f.d - k, out)


def restrict(f: HomoPoly, keep: Sequence[int], values: Mapping[int, object]) -> HomoPoly | None:
    """Set the variables in ``values`` to constants and keep the ``keep`` variables.

    Returns ``None`` when the result is not homogeneous.
    """
    vals = {i: to_fraction(v) for i, v in values.items()}
    acc: dict[Exponent, Fraction] = defaultdict(Fraction)
    for exp, c in f.terms.items():
        factor = prod((vals[i] ** exp[i] for i in vals if exp[i]), start=Fraction(1))
        acc[tuple(exp[i] for i in keep)] += c * factor
    acc = {e: c for e, c in acc.items() if c}
    degrees = {sum(e) for e in acc}
    if len(degrees) > 1:
        return None
    return HomoPoly(len(keep), degrees.pop() if degrees else 0, acc)


def embed(f: HomoPoly, positions: Sequence[int], n: int) -> HomoPoly:
    """Place the variables of ``f`` at ``positions`` inside an ``n``-variable ring."""
    if len(positions) != f.n:
        raise PolyError("positions must list one slot per variable")
    out = {}
    for exp, c in f.terms.items():
        e = [0] * n
        for p, a in zip(positions, exp):
            e[p] = a
        out[tuple(e)] = c
    return HomoPoly(n, f.d, out)


@dataclass(frozen=True)
class NormalizedCoeffs:
    """Table of ``V_alpha = alpha! c_alpha / d!`` over all of ``Delta_n^d``."""

    n: int
    d: int
    table: Mapping[Exponent, Fraction]

    def __getitem__(self, alpha: Sequence[int]) -> Fraction:
        alpha = tuple(alpha)
        if any(a < 0 for a in alpha):
            return Fraction(0)
        return self.table.get(alpha, Fraction(0))

    def scaled(self, c) -> NormalizedCoeffs:
        c = to_fraction(c)
        return NormalizedCoeffs(self.n, self.d, {a: c * v for a, v in self.table.items()})


def normalized_coeffs(f: HomoPoly) -> NormalizedCoeffs:
    dfact = factorial(f.d)
    table = {a: f.coeff(a) * alpha_factorial(a) / dfact for a in compositions(f.n, f.d)}
    return NormalizedCoeffs(f.n, f.d, MappingProxyType(table))


def from_normalized(V: NormalizedCoeffs) -> HomoPoly:
    return HomoPoly(V.n, V.d, {a: v * multinomial(a) for a, v in V.table.items()})


def num_monomials(n: int, d: int) -> int:
    return comb(n + d - 1, d) if n else int(d == 0)


# serialization

def to_json(f: HomoPoly) -> dict:
    return {
        "n": f.n,
        "d": f.d,
        "terms": [{"exp": list(e), "coeff": format_fraction(c)} for e, c in f.sorted_terms()],
    }


def from_json(doc: Mapping) -> HomoPoly:
    for key in ("n", "d", "terms"):
        if key not in doc:
            raise PolyError(f"polynomial document is missing field {key!r}")
    n, d = doc["n"], doc["d"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise PolyError(f"field 'n' must be a nonnegative integer, got {n!r}")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise PolyError(f"field 'd' must be a nonnegative integer, got {d!r}")
    items = []
    for k, term in enumerate(doc["terms"]):
        if isinstance(term, Mapping):
            if "exp" not in term or "coeff" not in term:
                raise PolyError(f"terms[{k}] needs 'exp' and 'coeff'")
            exp, coeff = term["exp"], term["coeff"]
        else:
            exp, coeff = term
        if not all(isinstance(e, int) and not isinstance(e, bool) for e in exp):
            raise PolyError(f"terms[{k}].exp must be a list of integers")
        items.append((exp, coeff))
    return HomoPoly.from_terms(n, d, items)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"x(\d+)(?:\s*(?:\^|\*\*)\s*(\d+))?$")


def parse_text(text: str, n: int | None = None, d: int | None = None) -> HomoPoly:
    """Parse the human-readable syntax, e.g. ``"14*x1^3 + 6*x1^2*x2 - 1/2 x3^3"``.

    ``n`` defaults to the largest variable index that occurs.  ``d`` is
    required only for the zero polynomial.
    """
    src = text.strip()
    if not src:
        raise PolyError("empty polynomial text")
    if src[0] not in "+-":
        src = "+" + src
    pieces = _TERM_SPLIT.split(src)[1:]
    raw: list[tuple[dict[int, int], Fraction]] = []
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        coeff = Fraction(1 if sign == "+" else -1)
        powers: dict[int, int] = defaultdict(int)
        tokens = [t for t in re.split(r"\s*\*(?!\*)\s*|\s+", _normalize_powers(body.strip())) if t]
        for tok in tokens:
            m = _FACTOR.fullmatch(tok.replace("§", "^"))
            if m:
                idx = int(m.group(1))
                if idx < 1:
                    raise PolyError(f"variable names start at x1, got {tok!r}")
                powers[idx - 1] += int(m.group(2) or 1)
            else:
                coeff *= to_fraction(tok)
        raw.append((powers, coeff))
    top = max((i for p, _ in raw for i in p), default=-1) + 1
    if n is None:
        n = top
    elif top > n:
        raise PolyError(f"variable x{top} exceeds n={n}")
    items = []
    for powers, coeff in raw:
        exp = [0] * n
        for i, k in powers.items():
            exp[i] = k
        items.append((exp, coeff))
    degrees = {sum(e) for e, c in items if c}
    if d is None:
        if len(degrees) > 1:
            raise PolyError(f"non-homogeneous polynomial: term degrees {sorted(degrees)}")
        if not degrees:
            raise PolyError("degree of the zero polynomial must be given explicitly")
        d = degrees.pop()
    return HomoPoly.from_terms(n, d, [(e, c) for e, c in items if c])


def _normalize_powers(body: str) -> str:
    # protect "**" and "^" so the factor splitter only sees single '*'
    return re.sub(r"\s*(\*\*|\^)\s*", "§", body)


def parse(source, n: int | None = None, d: int | None = None) -> HomoPoly:
    """Parse a polynomial from a JSON document (dict or string) or the text syntax."""
    if isinstance(source, Mapping):
        return from_json(source)
    if isinstance(source, str):
        stripped = source.strip()
        if stripped.startswith("{"):
            try:
                doc = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise PolyError(f"invalid JSON: {exc}") from None
            return from_json(doc)
        return parse_text(stripped, n=n, d=d)
    raise PolyError(f"cannot parse a polynomial from {type(source).__name__}")


def to_text(f: HomoPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for exp, c in f.sorted_terms():
        mono = "*".join(
            f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e
        )
        mag = abs(c)
        if not mono:
            body = format_fraction(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_fraction(mag)}*{mono}"
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text
