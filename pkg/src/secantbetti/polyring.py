"""Sparse multivariate polynomials over an exact field.

Monomials are dense exponent tuples.  A polynomial is a dict mapping
exponent tuples to nonzero field elements; the dict is never mutated after
the :class:`Polynomial` is built.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import lcm
from typing import Callable, Iterable, Sequence

from .field import Field, GF32003

Exponent = tuple  # tuple[int, ...]


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Malformed polynomial text.  ``column`` is 1-based."""

    def __init__(self, msg: str, column: int | None = None, line: int | None = None):
        self.column = column
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{msg} ({', '.join(where)})" if where else msg)


# --------------------------------------------------------------------- orders


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _lex_key(e):
    return tuple(e)


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex, lex, or a two-block elimination order.

    ``key(e)`` returns a tuple whose natural ordering is the monomial order
    (larger key = larger monomial).  ``heap_key`` is its componentwise
    negation, for use with :mod:`heapq`.
    """

    kind: str = "grevlex"
    block: int = 0
    key: Callable = dc_field(init=False, repr=False, compare=False)
    heap_key: Callable = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "grevlex":
            key = _grevlex_key
        elif self.kind == "lex":
            key = _lex_key
        elif self.kind == "elimination":
            b = self.block
            if b < 0:
                raise ValueError("block size must be nonnegative")

            def key(e, b=b):
                return _grevlex_key(e[:b]) + _grevlex_key(e[b:])
        else:
            raise ValueError(f"unknown monomial order {self.kind!r}")

        def heap_key(e, key=key):
            return tuple(-x for x in key(e))

        object.__setattr__(self, "key", key)
        object.__setattr__(self, "heap_key", heap_key)

    @classmethod
    def elimination(cls, block: int) -> "MonomialOrder":
        return cls("elimination", block)

    def __str__(self):
        return f"elimination({self.block})" if self.kind == "elimination" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# --------------------------------------------------------------- monomials


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, m: int) -> list[Exponent]:
    """All exponent vectors of total degree ``m``, in descending lex order."""
    if m < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), m):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


# -------------------------------------------------------------------- rings


@dataclass(frozen=True)
class PolynomialRing:
    field: Field
    names: tuple
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        for nm in names:
            if not _NAME_RE.fullmatch(nm):
                raise ValueError(f"invalid variable name {nm!r}")

    @classmethod
    def standard(cls, nvars: int, field: Field = GF32003, prefix: str = "x",
                 order: MonomialOrder = GREVLEX) -> "PolynomialRing":
        return cls(field, tuple(f"{prefix}{i}" for i in range(nvars)), order)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.field, self.names, order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, e: Exponent, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def from_terms(self, terms) -> "Polynomial":
        """Build from an iterable of (exponent, coefficient); combines duplicates."""
        F = self.field
        acc: dict = {}
        for e, c in (terms.items() if isinstance(terms, dict) else terms):
            e = tuple(e)
            acc[e] = acc.get(e, 0) + c
        out = {}
        for e, c in acc.items():
            c = F(c)
            if c:
                out[e] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, text: str) -> "Polynomial":
        return self.parse(text)

    def compatible(self, other: "PolynomialRing") -> bool:
        return self.field == other.field and self.names == other.names


# ---------------------------------------------------------------- polynomial


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_monomial(self, order: MonomialOrder | None = None) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        key = (order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coefficient(order))
        return self.scale(inv)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- arithmetic
    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            return False
        if other.ring is not self.ring and not self.ring.compatible(other.ring):
            raise RingMismatch(f"polynomials live in different rings: {self.ring.names} vs {other.ring.names}")
        return True

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        p = F.p
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, m: Exponent, c=None) -> "Polynomial":
        out = {tuple(a + b for a, b in zip(e, m)): v for e, v in self.terms.items()}
        poly = Polynomial(self.ring, out)
        return poly if c is None else poly.scale(c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.compatible(other.ring) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point: Sequence):
        """Evaluate at a point of field elements."""
        F = self.ring.field
        p = F.p
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * (pow(x, k, p) if p else x**k)
            total += t
        return total % p if p else total

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Exact ``add``/``sub``/``mul`` with a ring-compatibility check."""
    if not a.ring.compatible(b.ring):
        raise RingMismatch("operands live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute(f: Polynomial, images: Sequence[Polynomial],
               target: PolynomialRing | None = None) -> Polynomial:
    """Replace variable i of ``f`` by ``images[i]`` and expand."""
    if len(images) != f.ring.nvars:
        raise ValueError(f"expected {f.ring.nvars} images, got {len(images)}")
    if target is None:
        if not images:
            raise ValueError("target ring required when there are no images")
        target = images[0].ring
    for g in images:
        if not g.ring.compatible(target):
            raise RingMismatch("images must share one target ring")
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
        return powers[key]

    result = target.zero()
    for e, c in f.terms.items():
        t = target.constant(c)
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k)
        result = result + t
    return result


# ------------------------------------------------------------ text grammar

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|(\+)|(-)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, caret, star, plus, minus, bad = m.groups()
        col = m.start(m.lastindex) + 1
        if bad is not None:
            raise ParseError(f"unexpected character {bad!r}", col)
        kind = ("int" if num else "name" if name else "^" if caret else "*" if star
                else "+" if plus else "-")
        toks.append((kind, num or name or m.group(m.lastindex), col))
        pos = m.end()
    return toks


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``3*x0^2*x1 - x2*x3``; juxtaposition is rejected."""
    toks = _tokenize(text)
    index = {nm: i for i, nm in enumerate(ring.names)}
    n = ring.nvars
    terms: dict = {}
    i = 0
    if not toks:
        raise ParseError("empty polynomial", 1)

    def expect_factor(i):
        if i >= len(toks):
            raise ParseError("unexpected end of input", len(text) + 1)
        kind, val, col = toks[i]
        if kind == "int":
            return ("c", int(val)), i + 1
        if kind == "name":
            if val not in index:
                raise ParseError(f"unknown variable {val!r}", col)
            k = 1
            i += 1
            if i < len(toks) and toks[i][0] == "^":
                if i + 1 >= len(toks) or toks[i + 1][0] != "int":
                    raise ParseError("exponent must be a nonnegative integer", toks[i][2])
                k = int(toks[i + 1][1])
                i += 2
            return ("v", index[val], k), i
        raise ParseError(f"unexpected {val!r}", col)

    while i < len(toks):
        sign = 1
        if toks[i][0] in "+-":
            sign = -1 if toks[i][0] == "-" else 1
            i += 1
        elif terms or i > 0:
            raise ParseError("expected + or -", toks[i][2])
        coef = sign
        exp = [0] * n
        fac, i = expect_factor(i)
        while True:
            if fac[0] == "c":
                coef *= fac[1]
            else:
                exp[fac[1]] += fac[2]
            if i < len(toks) and toks[i][0] == "*":
                fac, i = expect_factor(i + 1)
                continue
            if i < len(toks) and toks[i][0] not in "+-":
                raise ParseError("juxtaposition is not allowed; use '*'", toks[i][2])
            break
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + coef
    return ring.from_terms(terms)


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    if not f.terms:
        return "0"
    F = f.ring.field
    names = f.ring.names
    parts = []
    for e, c in f.sorted_terms(order):
        c = F.signed(c)
        if isinstance(c, Fraction) and c.denominator == 1:
            c = int(c)
        mono = "*".join(nm if k == 1 else f"{nm}^{k}" for nm, k in zip(names, e) if k)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def clear_denominators(f: Polynomial) -> Polynomial:
    """Scale a rational polynomial to have integer coefficients."""
    if not f.ring.field.is_rational or not f.terms:
        return f
    den = 1
    for c in f.terms.values():
        den = lcm(den, Fraction(c).denominator)
    return f.scale(den)


def homogeneous_components(f: Polynomial) -> dict[int, Polynomial]:
    comps: dict = {}
    for e, c in f.terms.items():
        comps.setdefault(sum(e), {})[e] = c
    return {d: Polynomial(f.ring, t) for d, t in comps.items()}


def linear_form(ring: PolynomialRing, coeffs: Iterable) -> Polynomial:
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0] * ring.nvars
        e[i] = 1
        terms[tuple(e)] = c
    return ring.from_terms(terms)
