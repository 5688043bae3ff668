"""Hilbert series of monomial ideals and Hilbert polynomials of quotients.

The series of ``S/I`` is ``N(t) / (1-t)^n`` with ``N`` an integer
polynomial computed from the leading-term ideal by pivot recursion:
``N(J) = N(J + (p)) + t^deg(p) N(J : p)`` for a pivot power ``p = x_v^e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .groebner import GroebnerBasis


# ---------------------------------------------------------- integer polys


def _padd(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _psub(a, b):
    return _padd(a, [-x for x in b])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a, k):
    return [0] * k + list(a) if a else []


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def divide_by_one_minus_t(a):
    """Exact quotient of ``a`` by ``(1 - t)``; requires ``a(1) == 0``."""
    if sum(a) != 0:
        raise ValueError("polynomial does not vanish at t = 1")
    q = []
    acc = 0
    for x in a[:-1]:
        acc += x
        q.append(acc)
    return _trim(q)


# -------------------------------------------------------- monomial ideals


def minimalize(gens: Sequence[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _pairwise_coprime(gens) -> bool:
    used = 0
    for g in gens:
        m = 0
        for i, x in enumerate(g):
            if x:
                m |= 1 << i
        if used & m:
            return False
        used |= m
    return True


def hilbert_numerator(leads: Sequence[tuple], nvars: int) -> list[int]:
    """Numerator ``N`` with ``HS(S/(leads)) = N(t) / (1-t)^nvars``."""
    return _numerator(minimalize([tuple(e) for e in leads]), nvars)


def _numerator(gens: list, n: int) -> list[int]:
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return []
    if _pairwise_coprime(gens):
        out = [1]
        for g in gens:
            d = sum(g)
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on the variable occurring in the most non-pure-power generators
    counts = [0] * n
    for g in gens:
        if sum(1 for x in g if x) > 1:
            for i, x in enumerate(g):
                if x:
                    counts[i] += 1
    v = max(range(n), key=lambda i: (counts[i], -i))
    exps = sorted(g[v] for g in gens if g[v] and sum(1 for x in g if x) > 1)
    e = exps[len(exps) // 2]
    piv = tuple(e if i == v else 0 for i in range(n))
    plus = minimalize([g for g in gens if not (g[v] >= e)] + [piv])
    colon = minimalize([tuple(max(0, x - e) if i == v else x for i, x in enumerate(g)) for g in gens])
    return _padd(_numerator(plus, n), _shift(_numerator(colon, n), e))


# ---------------------------------------------------------- Hilbert data


def binomial_poly(x: int, r: int) -> int:
    """``C(x, r)`` as a polynomial in ``x`` (valid for negative ``x``)."""
    if r < 0:
        return 0
    num = 1
    for k in range(r):
        num *= x - k
    den = 1
    for k in range(2, r + 1):
        den *= k
    return num // den


@dataclass
class HilbertData:
    """Hilbert series, function and polynomial of a graded quotient ``S/I``.

    ``alpha[i]`` are the coefficients of the Hilbert polynomial in the basis
    ``C(m+i-1, i)``; for a quotient of Krull dimension 4 these are
    ``(alpha0, alpha1, 1-G, D)``.
    """

    numerator: list[int]
    nvars: int
    dim: int = field(init=False)
    reduced_numerator: list[int] = field(init=False)

    def __post_init__(self):
        q = _trim(self.numerator)
        k = 0
        while q and sum(q) == 0:
            q = divide_by_one_minus_t(q)
            k += 1
        self.reduced_numerator = q
        self.dim = self.nvars - k if q else 0

    @classmethod
    def from_groebner(cls, G: GroebnerBasis) -> "HilbertData":
        return cls(hilbert_numerator(G.leading_monomials, G.ring.nvars), G.ring.nvars)

    @property
    def degree(self) -> int:
        """Multiplicity: the reduced numerator at t = 1."""
        return sum(self.reduced_numerator)

    @property
    def projective_dimension(self) -> int:
        return self.dim - 1

    def value(self, m: int) -> int:
        """Hilbert function ``dim (S/I)_m``."""
        if m < 0:
            return 0
        n = self.nvars
        if n == 0:
            return self.numerator[m] if m < len(self.numerator) else 0
        return sum(c * comb(m - k + n - 1, n - 1) for k, c in enumerate(self.numerator) if k <= m)

    def values(self, upto: int) -> dict[int, int]:
        return {m: self.value(m) for m in range(upto + 1)}

    def polynomial(self, m: int) -> int:
        """Hilbert polynomial evaluated at ``m`` (any integer)."""
        d = self.dim
        if d == 0:
            return 0
        return sum(c * binomial_poly(m - k + d - 1, d - 1) for k, c in enumerate(self.reduced_numerator))

    @property
    def alpha(self) -> list[Fraction]:
        """Coefficients in the basis ``C(m+i-1, i)``, i = 0..dim-1."""
        from .linalg import nullspace  # local: avoids import cycle at module load
        from .field import QQ

        d = self.dim
        if d == 0:
            return []
        # solve sum_i alpha_i C(m+i-1, i) = P(m) at m = 0..d-1
        rows = []
        for m in range(d):
            rows.append([binomial_poly(m + i - 1, i) for i in range(d)] + [-self.polynomial(m)])
        ns = nullspace(rows, QQ, d + 1)
        vec = next(v for v in ns if v[d] != 0)
        return [Fraction(x) / vec[d] for x in vec[:d]]

    @property
    def stabilization(self) -> int:
        """Least ``m0 >= 0`` with HF(m) = HP(m) for every m >= m0."""
        top = len(self.reduced_numerator) - 1 - self.dim
        m0 = 0
        for m in range(max(top, 0), -1, -1):
            if self.value(m) != self.polynomial(m):
                m0 = m + 1
                break
        return m0

    def section_invariants(self) -> tuple[int, int] | None:
        """``(D, G)`` for a quotient of Krull dimension 4, else None."""
        if self.dim != 4:
            return None
        a = self.alpha
        return int(a[3]), int(1 - a[2])

    def series_terms(self, upto: int) -> list[int]:
        return [self.value(m) for m in range(upto + 1)]


def hilbert_function(G: GroebnerBasis, m: int) -> int:
    return G.hilbert_function(m)


def hilbert_poly(G: GroebnerBasis) -> HilbertData:
    return HilbertData.from_groebner(G)
