"""Graded pieces of secant ideals by the join construction.

A form ``F`` of degree ``m`` vanishes on the k-th secant variety of ``V(I)``
iff ``F(y0 + ... + yk)`` lies in ``I(y0) + ... + I(yk)``.  The substituted
form splits into multihomogeneous components of multidegree
``(a0, ..., ak)``; modulo the ideal each component lives in
``(S/I)_{a0} (x) ... (x) (S/I)_{ak}``, with the standard-monomial basis of the
tensor product.  The coefficients of ``F`` are unknowns and the kernel of
the resulting linear map is ``(I_Sigma_k)_m``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

from . import linalg
from .betti import QuotientRing, betti_table
from .groebner import DEFAULT_DEGREE_CAP, GroebnerBasis, Ideal, buchberger, eliminate
from .hilbert import HilbertData
from .polyring import Polynomial, PolynomialRing, monomials_of_degree

log = logging.getLogger(__name__)


@dataclass
class SecantSpec:
    base: Ideal
    k: int = 1
    m_max: int | None = None
    degree_cap: int = DEFAULT_DEGREE_CAP

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("secant index k must be >= 0")
        if self.m_max is None:
            self.m_max = self.k + 3
        if self.m_max > self.degree_cap:
            raise ValueError(f"m_max {self.m_max} exceeds degree cap {self.degree_cap}")

    @property
    def ambient(self) -> int:
        return self.base.ring.nvars - 1


def _nonincreasing_compositions(m: int, parts: int, cap: int | None = None):
    cap = m if cap is None else cap
    if parts == 1:
        if m <= cap:
            yield (m,)
        return
    for first in range(min(m, cap), -1, -1):
        if first * parts < m:
            break
        for rest in _nonincreasing_compositions(m - first, parts - 1, first):
            yield (first,) + rest


def _sub_exponents(alpha: tuple, size: int):
    """All ``beta <= alpha`` (componentwise) with ``|beta| = size``."""
    n = len(alpha)
    suffix = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + alpha[v]

    def rec(v, remaining, cur):
        if v == n:
            if remaining == 0:
                yield tuple(cur)
            return
        lo = max(0, remaining - suffix[v + 1])
        for x in range(min(alpha[v], remaining), lo - 1, -1):
            cur.append(x)
            yield from rec(v + 1, remaining - x, cur)
            cur.pop()

    yield from rec(0, size, [])


def _splits(alpha: tuple, sizes: tuple):
    if len(sizes) == 1:
        yield (alpha,)
        return
    for beta in _sub_exponents(alpha, sizes[0]):
        rest = tuple(a - b for a, b in zip(alpha, beta))
        for tail in _splits(rest, sizes[1:]):
            yield (beta,) + tail


def _multinomial(alpha, parts) -> int:
    num = 1
    for a in alpha:
        num *= factorial(a)
    den = 1
    for b in parts:
        for x in b:
            den *= factorial(x)
    return num // den


def join_matrix(Q: QuotientRing, k: int, m: int):
    """Rows: tensor coordinates of F(y0+...+yk) mod I; columns: monomials of degree m."""
    ring = Q.ring
    F = ring.field
    p = F.p
    mons = monomials_of_degree(ring.nvars, m)
    rows: dict = {}
    for a in _nonincreasing_compositions(m, k + 1):
        for c, alpha in enumerate(mons):
            for parts in _splits(alpha, a):
                coef = _multinomial(alpha, parts)
                if p:
                    coef %= p
                    if not coef:
                        continue
                nfs = [Q.monomial_nf(b) for b in parts]
                if any(not nf for nf in nfs):
                    continue
                idx = [Q.index(sum(b)) for b in parts]
                # tensor product of the normal forms
                acc = {(): coef}
                for nf, ix in zip(nfs, idx):
                    nxt = {}
                    for key, v in acc.items():
                        for e, w in nf.items():
                            nk = key + (ix[e],)
                            nxt[nk] = nxt.get(nk, 0) + v * w
                    acc = nxt
                for key, v in acc.items():
                    r = rows.setdefault((a, key), {})
                    r[c] = r.get(c, 0) + v
    mat = []
    for r in rows.values():
        vec = [0] * len(mons)
        for c, v in r.items():
            vec[c] = v % p if p else v
        if any(vec):
            mat.append(vec)
    return mat, mons


def secant_graded_piece(spec: SecantSpec, m: int, G: GroebnerBasis | None = None) -> list[Polynomial]:
    """Basis (in reduced echelon form) of the degree-``m`` part of the k-th secant ideal."""
    if m > spec.degree_cap:
        raise ValueError(f"degree {m} exceeds degree cap {spec.degree_cap}")
    ring = spec.base.ring
    G = G or buchberger(spec.base, degree_cap=spec.degree_cap)
    if spec.k == 0:
        # I_m = kernel of the normal-form map on monomials
        mons = monomials_of_degree(ring.nvars, m)
        Q = QuotientRing(G)
        bidx = Q.index(m)
        cols = []
        for e in mons:
            v = [0] * len(bidx)
            for s, c in Q.monomial_nf(e).items():
                v[bidx[s]] = c
            cols.append(v)
        mat = [list(r) for r in zip(*cols)] if bidx else []
        return _kernel_polys(ring, mat, mons)
    Q = QuotientRing(G)
    mat, mons = join_matrix(Q, spec.k, m)
    log.info("secant degree %d: %d equations x %d unknowns", m, len(mat), len(mons))
    return _kernel_polys(ring, mat, mons)


def _kernel_polys(ring: PolynomialRing, mat, mons) -> list[Polynomial]:
    if not mat:
        basis = [[1 if i == j else 0 for i in range(len(mons))] for j in range(len(mons))]
    else:
        basis = linalg.nullspace(mat, ring.field, len(mons))
    out = []
    for v in basis:
        out.append(ring.from_terms((mons[i], c) for i, c in enumerate(v) if c))
    # canonical order: by leading monomial, descending
    out.sort(key=lambda f: ring.order.key(f.leading_monomial()), reverse=True)
    return [f.monic() for f in out]


def _span_coords(polys: Sequence[Polynomial], mons: list) -> list[list]:
    idx = {e: i for i, e in enumerate(mons)}
    rows = []
    for f in polys:
        v = [0] * len(mons)
        for e, c in f.terms.items():
            v[idx[e]] = c
        rows.append(v)
    return rows


@dataclass
class SecantResult:
    ideal: Ideal
    pieces: dict  # degree -> dimension of the graded piece
    new_generators: dict  # degree -> number of minimal generators in that degree
    certificate: dict | None = None
    groebner: GroebnerBasis | None = field(default=None, repr=False)
    hilbert: HilbertData | None = field(default=None, repr=False)


def curve_invariants(hd: HilbertData) -> tuple[int, int] | None:
    """``(d, g)`` of a curve from its Hilbert polynomial ``d m + 1 - g``."""
    if hd.dim != 2:
        return None
    d = hd.degree
    g = 1 - (hd.polynomial(0))
    return d, g


def secant_ideal(spec: SecantSpec, certify: bool = True, betti: bool = True,
                 expected: dict | None = None, seed: int = 0) -> SecantResult:
    """Ideal generated by the graded pieces up to ``m_max``, with a certificate.

    The certificate records degree, projective dimension and projective
    dimension of the quotient.  ``matches`` compares (degree, dimension) with
    ``expected`` or, for curves and k = 1, with the values predicted from the
    curve's degree and genus.  It does not prove that the pieces generate the
    whole secant ideal.
    """
    ring = spec.base.ring
    n = ring.nvars
    G = buchberger(spec.base, degree_cap=spec.degree_cap)
    gens: list[Polynomial] = []
    pieces, new = {}, {}
    prev: list[Polynomial] = []
    for m in range(1, spec.m_max + 1):
        piece = secant_graded_piece(spec, m, G)
        pieces[m] = len(piece)
        if not piece:
            prev = []
            continue
        mons = monomials_of_degree(n, m)
        multiples = [f * x for f in prev for x in ring.gens()]
        # new generators: piece elements independent of the products from degree m - 1
        rows = _span_coords(multiples, mons) + _span_coords(piece, mons)
        keep = linalg.independent_rows(rows, ring.field, len(mons))
        chosen = [piece[i - len(multiples)] for i in keep if i >= len(multiples)]
        new[m] = len(chosen)
        gens.extend(chosen)
        prev = piece
    ideal = Ideal(ring, gens)
    result = SecantResult(ideal, pieces, new)
    if certify:
        GS = buchberger(ideal, degree_cap=spec.degree_cap)
        hd = HilbertData.from_groebner(GS)
        result.groebner, result.hilbert = GS, hd
        cert = {"degree": hd.degree, "dimension": hd.dim - 1}
        if betti:
            t = betti_table(GS, seed=seed, degree_cap=spec.degree_cap)
            cert["projdim"] = t.pd
            cert["betti_complete"] = t.complete
        if expected is None:
            expected = expected_secant_invariants(spec, G)
        if expected:
            cert["expected"] = expected
            cert["matches"] = all(cert.get(key) == val for key, val in expected.items())
        else:
            cert["matches"] = None
        result.certificate = cert
    return result


def expected_secant_invariants(spec: SecantSpec, G: GroebnerBasis | None = None) -> dict | None:
    G = G or buchberger(spec.base, degree_cap=spec.degree_cap)
    inv = curve_invariants(HilbertData.from_groebner(G))
    if inv is None:
        return None
    d, g = inv
    n = spec.ambient
    dim = min(2 * spec.k + 1, n)
    out = {"dimension": dim}
    if spec.k == 1:
        from .predictions import CurveParams, deg_secant

        out["degree"] = 1 if dim == n else deg_secant(CurveParams(g=g, d=d, n=n))
    return out


# ------------------------------------------------------------- elimination


def secant_by_elimination(base: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """k = 1 secant ideal by eliminating y, z from I(y) + I(z) + (x - y - z)."""
    ring = base.ring
    n = ring.nvars
    names = ring.names + tuple(f"y{i}" for i in range(n)) + tuple(f"z{i}" for i in range(n))
    big = PolynomialRing(ring.field, names, ring.order)

    def shift(f, offset):
        return Polynomial(big, {(0,) * offset + e + (0,) * (2 * n - offset): c
                                for e, c in f.terms.items()})

    gens = [shift(g, n) for g in base] + [shift(g, 2 * n) for g in base]
    for i in range(n):
        gens.append(big.gen(i) - big.gen(n + i) - big.gen(2 * n + i))
    return eliminate(Ideal(big, gens), list(range(n)), degree_cap=degree_cap)
