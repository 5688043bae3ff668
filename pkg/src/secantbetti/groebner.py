"""Buchberger's algorithm for homogeneous ideals, normal forms, elimination."""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .polyring import (
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    RingMismatch,
    divides,
    mono_lcm,
    monomials_of_degree,
)

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 12
DENSE_MAX_MONOMIALS = 200_000


class GroebnerTruncation(RuntimeError):
    """Raised when the computation needs S-pairs above the degree cap."""

    def __init__(self, degree: int, cap: int):
        self.degree = degree
        self.cap = cap
        super().__init__(f"S-pair of degree {degree} exceeds degree cap {cap}")


class Ideal:
    """A finitely generated ideal, by default required to be homogeneous."""

    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial] = (),
                 homogeneous: bool = True):
        gens = []
        for g in generators:
            if not g.ring.compatible(ring):
                raise RingMismatch("generator not in the ideal's ring")
            if g.is_zero():
                continue
            if homogeneous and not g.is_homogeneous():
                raise ValueError(f"generator is not homogeneous: {g}")
            gens.append(g if g.ring is ring else Polynomial(ring, g.terms))
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.homogeneous = homogeneous

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def degrees(self) -> list[int]:
        return [g.degree() for g in self.generators]

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators,
                     self.homogeneous and other.homogeneous)


# ------------------------------------------------------------ reduction core


class _Packing:
    """Monomials as integers whose natural order is the monomial order.

    ``K(e) = k0 + sum(w_i e_i)`` is affine in the exponents, so
    ``K(e + f) = K(e) + K(f) - k0``.  Variable slots are 16 bits wide with a
    guard bit, which turns divisibility into one subtraction.
    """

    B = 16
    H = (1 << 15) - 1

    def __init__(self, order: MonomialOrder, n: int):
        B, H = self.B, self.H
        self.n = n
        self.weights = [0] * n
        self.k0 = 0
        self.slots: list = [None] * n  # (shift, complemented) per variable
        self.varmask = 0
        if order.kind == "lex":
            for i in range(n):
                sh = B * (n - 1 - i)
                self.weights[i] = 1 << sh
                self.slots[i] = (sh, False)
            self.complement = False
        else:
            blocks = [(0, n)] if order.kind == "grevlex" else [(0, order.block), (order.block, n)]
            shift = 0
            for a, b in reversed(blocks):
                width = b - a
                deg = 1 << (B * width + shift)
                for i in range(a, b):
                    sh = B * (i - a) + shift
                    self.weights[i] = deg - (1 << sh)
                    self.k0 += H << sh
                    self.slots[i] = (sh, True)
                shift += B * (width + 1)
            self.complement = True
        self.guard = 0
        for sh, _ in self.slots:
            self.varmask |= ((1 << B) - 1) << sh
            self.guard |= 1 << (sh + B - 1)

    def pack(self, e) -> int:
        k = self.k0
        for w, x in zip(self.weights, e):
            if x:
                if x > self.H:
                    raise OverflowError("exponent too large for packed monomials")
                k += w * x
        return k

    def unpack(self, k: int) -> tuple:
        M = (1 << self.B) - 1
        H = self.H
        return tuple((H - ((k >> sh) & M)) if comp else ((k >> sh) & M) for sh, comp in self.slots)


class _DenseCodes:
    """int64 codes ordering the monomials of each fixed degree like the monomial order.

    Within one degree every order here is a lexicographic comparison of
    signed digit vectors (block degrees, then exponents), written in base
    ``max_degree + 1``.  The code is linear in the exponents, so shifting a
    tail by a monomial is one vector addition.
    """

    def __init__(self, order: MonomialOrder, n: int, max_degree: int):
        self.max_degree = max_degree
        b = max_degree + 1
        self.fits = b ** (n + 1) < 1 << 62
        if order.kind == "lex":
            self.weights = [b ** (n - 1 - i) for i in range(n)]
        elif order.kind == "grevlex":
            self.weights = [-b ** i for i in range(n)]
        else:
            r = order.block
            self.weights = [b ** n - b ** (n - r + i) if i < r else -b ** (i - r)
                            for i in range(n)]
        self._tables: dict = {}

    def code(self, e) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def table(self, deg: int, pk: _Packing):
        t = self._tables.get(deg)
        if t is None:
            mons = sorted(monomials_of_degree(len(self.weights), deg), key=self.code)
            codes = np.array([self.code(e) for e in mons], dtype=np.int64)
            kmons = [pk.pack(e) for e in mons]
            # reducer per monomial: -2 unknown, -1 irreducible
            owner = np.full(len(mons), -2, dtype=np.int64)
            t = self._tables[deg] = (codes, kmons, {k: i for i, k in enumerate(kmons)},
                                     np.array(mons, dtype=np.int16).reshape(len(mons), -1), owner)
        return t


class _Reducer:
    """Mutable reduction state: monic polynomials stored as (lead, tail).

    ``leads``/``tails`` hold exponent tuples; the ``k*`` lists hold the same
    data packed by :class:`_Packing` for the inner reduction loop.
    """

    def __init__(self, ring: PolynomialRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.p = ring.field.p
        self.pk = _Packing(order, ring.nvars)
        self.leads: list = []
        self.tails: list = []
        self.kleads: list[int] = []
        self.kdiv: list[int] = []
        self.ktails: list = []
        self.active: list[int] = []  # indices usable as reducers
        self._cache: dict = {}
        self.dense = None  # _DenseCodes when homogeneous dense reduction is on
        self.dleads: list[int] = []
        self.dtails: list = []
        self._tail_terms = 0

    def add(self, lead, tail) -> int:
        idx = len(self.leads)
        pk = self.pk
        self.leads.append(lead)
        self.tails.append(tail)
        k = pk.pack(lead)
        self.kleads.append(k)
        self.kdiv.append(k & pk.varmask)
        self.ktails.append([(pk.pack(e), c) for e, c in tail])
        self.active.append(idx)
        self._tail_terms += len(tail)
        if self.dense is not None:
            self._add_dense(lead, tail)
        self._cache = {m: j for m, j in self._cache.items() if j is not None}
        return idx

    def deactivate(self, idx: int):
        self.active.remove(idx)
        if self.dense is not None:
            for *_, owner in self.dense._tables.values():
                owner[owner == idx] = -2
        self._cache = {m: j for m, j in self._cache.items() if j is not None and j != idx}

    def _divides(self, dl: int, dm: int) -> bool:
        G = self.pk.guard
        if self.pk.complement:
            return ((dl | G) - dm) & G == G
        return ((dm | G) - dl) & G == G

    def divisor_k(self, k: int):
        j = self._cache.get(k, -1)
        if j != -1:
            return j
        G = self.pk.guard
        dm = k & self.pk.varmask
        kdiv = self.kdiv
        j = None
        if self.pk.complement:
            for i in self.active:
                if ((kdiv[i] | G) - dm) & G == G:
                    j = i
                    break
        else:
            dmg = dm | G
            for i in self.active:
                if (dmg - kdiv[i]) & G == G:
                    j = i
                    break
        self._cache[k] = j
        return j

    def divisor(self, m):
        return self.divisor_k(self.pk.pack(m))

    def divisors_k(self, k: int) -> list[int]:
        dm = k & self.pk.varmask
        return [i for i in self.active if self._divides(self.kdiv[i], dm)]

    def divisors(self, m) -> list[int]:
        return self.divisors_k(self.pk.pack(m))

    def pack_dict(self, h: dict) -> dict:
        pack = self.pk.pack
        return {pack(e): c for e, c in h.items()}

    def unpack_dict(self, h: dict) -> dict:
        unpack = self.pk.unpack
        return {unpack(k): c for k, c in h.items()}

    def reduce(self, h: dict, rng=None) -> dict:
        """Full reduction of ``h`` (exponent tuples) to normal form."""
        return self.unpack_dict(self.reduce_k(self.pack_dict(h), rng))

    def enable_dense(self, max_degree: int) -> bool:
        """Switch homogeneous reductions of degree <= max_degree to dense vectors."""
        if not self.p:
            return False
        codes = _DenseCodes(self.order, self.ring.nvars, max_degree)
        if not codes.fits:
            return False
        self.dense = codes
        self.dleads, self.dtails = [], []
        for lead, tail in zip(self.leads, self.tails):
            self._add_dense(lead, tail)
        return True

    def _add_dense(self, lead, tail):
        code = self.dense.code
        idx = len(self.dleads)
        for _, _, _, E, owner in self.dense._tables.values():
            hit = (E >= np.array(lead, dtype=np.int16)).all(axis=1) & (owner == -1)
            owner[hit] = idx
        self.dleads.append(code(lead))
        self.dtails.append((np.array([code(e) for e, _ in tail], dtype=np.int64),
                            np.array([c for _, c in tail], dtype=np.int64)))

    def _use_dense(self, h: dict) -> bool:
        # numpy call overhead only pays off against long reducer tails
        if self.dense is None or not h or self._tail_terms < 24 * len(self.active):
            return False
        deg = sum(self.pk.unpack(next(iter(h))))
        n = self.ring.nvars
        return deg <= self.dense.max_degree and comb(deg + n - 1, n - 1) <= DENSE_MAX_MONOMIALS

    def _reduce_dense(self, h: dict) -> dict:
        """``reduce_k`` for homogeneous h: one vector over the monomials of its degree."""
        p = self.p
        deg = sum(self.pk.unpack(next(iter(h))))
        codes, kmons, index, _, owner = self.dense.table(deg, self.pk)
        vec = np.zeros(len(codes), dtype=np.int64)
        for k, c in h.items():
            vec[index[k]] = c
        dleads, dtails = self.dleads, self.dtails
        search = codes.searchsorted
        top = len(codes)
        while top > 0:
            # the next nonzero is usually close below the last one
            lo = max(top - 256, 0)
            nz = vec[lo:top].nonzero()[0]
            if not nz.size:
                top = lo
                continue
            top = lo + int(nz[-1])
            j = int(owner[top])
            if j == -2:
                j = self.divisor_k(kmons[top])
                j = owner[top] = -1 if j is None else j
            if j < 0:
                continue
            c = int(vec[top])
            vec[top] = 0
            tcodes, tcoefs = dtails[j]
            if tcodes.size:
                idx = search(tcodes + (int(codes[top]) - dleads[j]))
                vec[idx] = (vec[idx] - c * tcoefs) % p
        nz = vec.nonzero()[0]
        return dict(zip([kmons[i] for i in nz.tolist()], vec[nz].tolist()))

    def reduce_k(self, h: dict, rng=None) -> dict:
        """Full reduction of a packed dict (consumed); returns a packed dict."""
        if rng is None and self._use_dense(h):
            return self._reduce_dense(h)
        p = self.p
        heap = [-k for k in h]
        heapq.heapify(heap)
        out = {}
        kleads, ktails = self.kleads, self.ktails
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            m = -pop(heap)
            c = h.pop(m, None)
            if c is None:
                continue
            if rng is None:
                j = self.divisor_k(m)
            else:
                ds = self.divisors_k(m)
                j = rng.choice(ds) if ds else None
            if j is None:
                out[m] = c
                continue
            shift = m - kleads[j]
            for e, a in ktails[j]:
                mm = e + shift
                old = h.get(mm)
                if old is None:
                    v = -c * a
                    h[mm] = v % p if p else v
                    push(heap, -mm)
                else:
                    v = old - c * a
                    if p:
                        v %= p
                    if v:
                        h[mm] = v
                    else:
                        del h[mm]
        return out

    def make_monic(self, h: dict):
        """Split a nonzero dict into (lead, tail) with the lead coefficient 1."""
        key = self.order.key
        lead = max(h, key=key)
        F = self.ring.field
        inv = F.inv(h[lead])
        p = self.p
        tail = []
        for e, c in h.items():
            if e != lead:
                tail.append((e, c * inv % p if p else c * inv))
        tail.sort(key=lambda t: key(t[0]), reverse=True)
        return lead, tail


# ---------------------------------------------------------------- the basis


class GroebnerBasis:
    """A reduced Groebner basis; elements are monic and sorted by leading monomial."""

    def __init__(self, ring: PolynomialRing, order: MonomialOrder,
                 leads: Sequence, tails: Sequence, reduced: bool = True):
        if ring.order != order:
            ring = ring.with_order(order)
        self.ring = ring
        self.order = order
        self.reduced = reduced
        self._red = _Reducer(ring, order)
        for lead, tail in zip(leads, tails):
            self._red.add(lead, list(tail))
        one = ring.field.one()
        self.elements: tuple[Polynomial, ...] = tuple(
            Polynomial(ring, {lead: one, **dict(tail)}) for lead, tail in zip(leads, tails))
        self._std_cache: dict[int, list] = {}
        self.truncated_at: int | None = None

    @property
    def leading_monomials(self) -> list:
        return list(self._red.leads)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({len(self)} elements, {self.order})"

    def max_degree(self) -> int:
        return max((sum(e) for e in self._red.leads), default=0)

    def reduce_dict(self, terms: dict, rng=None) -> dict:
        return self._red.reduce(dict(terms), rng)

    def normal_form(self, f: Polynomial, rng=None) -> Polynomial:
        if not f.ring.compatible(self.ring):
            raise RingMismatch("polynomial and basis live in different rings")
        return Polynomial(self.ring, self._red.reduce(dict(f.terms), rng))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(sum(e) == 0 for e in self._red.leads)

    def in_leading_ideal(self, m) -> bool:
        return self._red.divisor(tuple(m)) is not None

    def standard_monomials(self, m: int) -> list:
        """Degree-``m`` monomials outside the leading-term ideal, sorted descending."""
        if m not in self._std_cache:
            if m < 0:
                mons = []
            elif m == 0:
                mons = [] if self.is_unit_ideal() else [(0,) * self.ring.nvars]
            else:
                # every standard monomial of degree m is x_v * (standard of degree m-1)
                prev = self.standard_monomials(m - 1)
                n = self.ring.nvars
                cand = set()
                for s in prev:
                    for v in range(n):
                        e = list(s)
                        e[v] += 1
                        cand.add(tuple(e))
                mons = [e for e in cand if self._red.divisor(e) is None]
                mons.sort(key=self.order.key, reverse=True)
            self._std_cache[m] = mons
        return self._std_cache[m]

    def hilbert_function(self, m: int) -> int:
        if self.truncated_at is not None and m > self.truncated_at:
            raise GroebnerTruncation(m, self.truncated_at)
        return len(self.standard_monomials(m))

    def s_pairs_reduce_to_zero(self) -> bool:
        """Check Buchberger's criterion on every pair of elements."""
        red = self._red
        n = len(red.leads)
        for i in range(n):
            for j in range(i + 1, n):
                h = _spoly(red, i, j)
                if h and red.reduce_k(h):
                    return False
        return True

    def is_reduced(self) -> bool:
        one = self.ring.field.one()
        for i, g in enumerate(self.elements):
            lead = self._red.leads[i]
            if g.terms[lead] != one:
                return False
            for e in g.terms:
                for j, l2 in enumerate(self._red.leads):
                    if j != i and divides(l2, e):
                        return False
        return True

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements, homogeneous=all(g.is_homogeneous() for g in self.elements))


def _spoly(red: _Reducer, i: int, j: int) -> dict:
    """S-polynomial of elements ``i`` and ``j`` as a packed dict."""
    pk = red.pk
    L = pk.pack(mono_lcm(red.leads[i], red.leads[j]))
    si, sj = L - red.kleads[i], L - red.kleads[j]
    p = red.p
    h: dict = {}
    for e, c in red.ktails[i]:
        h[e + si] = c
    for e, c in red.ktails[j]:
        mm = e + sj
        v = h.get(mm, 0) - c
        if p:
            v %= p
        if v:
            h[mm] = v
        else:
            h.pop(mm, None)
    return h


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# -------------------------------------------------------------- Buchberger


def buchberger(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder | None = None,
               degree_cap: int = DEFAULT_DEGREE_CAP, truncate: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    Pairs are processed by the normal strategy (smallest lcm degree, then
    lex on the lcm) with Buchberger's coprime and chain criteria in the
    Gebauer-Moeller form.  Input generators enter as pseudo-pairs of their
    own degree, so homogeneous input is processed one degree at a time.

    A pair above ``degree_cap`` raises :class:`GroebnerTruncation`, unless
    ``truncate`` is set: then the basis is returned as a degree-truncated
    basis, exact in degrees ``<= degree_cap`` (homogeneous input only).
    """
    if not isinstance(ideal, Ideal):
        gens = list(ideal)
        if not gens:
            raise ValueError("empty generator list needs an Ideal with a ring")
        ideal = Ideal(gens[0].ring, gens, homogeneous=all(g.is_homogeneous() for g in gens))
    ring = ideal.ring
    order = order or ring.order
    if truncate and not ideal.homogeneous:
        raise ValueError("degree truncation needs a homogeneous ideal")
    red = _Reducer(ring, order)
    if ideal.homogeneous:
        red.enable_dense(degree_cap)
    truncated = False

    # queue entries: (degree, kind, lex-lcm, tiebreak, payload)
    # kind 0 = input generator, 1 = S-pair
    queue: list = []
    for t, g in enumerate(sorted(ideal.generators, key=lambda g: g.degree())):
        heapq.heappush(queue, (g.degree(), 0, (), t, g))
    pairs: dict = {}  # live pair -> packed lcm (divisibility part only)
    pk = red.pk
    vm, G = pk.varmask, pk.guard
    if pk.complement:
        def kdivides(a, b):
            return ((a | G) - b) & G == G
    else:
        def kdivides(a, b):
            return ((b | G) - a) & G == G

    def update(h: int):
        lh = red.leads[h]
        klh = red.kdiv[h]
        C = [g for g in red.active if g != h]
        lcms = {g: mono_lcm(red.leads[g], lh) for g in C}
        klcm = {g: pk.pack(L) & vm for g, L in lcms.items()}
        D = []
        while C:
            g1 = C.pop()
            if _coprime(red.leads[g1], lh):
                D.append(g1)
                continue
            K1 = klcm[g1]
            if any(kdivides(klcm[g2], K1) for g2 in C) or any(kdivides(klcm[g2], K1) for g2 in D):
                continue
            D.append(g1)
        # drop old pairs whose lcm is strictly covered via h
        for (i, j), K in list(pairs.items()):
            if kdivides(klh, K):
                L = mono_lcm(red.leads[i], red.leads[j])
                if mono_lcm(red.leads[i], lh) != L and mono_lcm(red.leads[j], lh) != L:
                    del pairs[(i, j)]
        for g in sorted(D):
            if not _coprime(red.leads[g], lh):
                L = lcms[g]
                heapq.heappush(queue, (sum(L), 1, tuple(-x for x in L), (g, h), None))
                pairs[(g, h)] = klcm[g]
        for g in list(red.active):
            if g != h and kdivides(klh, red.kdiv[g]):
                red.deactivate(g)

    while queue:
        deg, kind, _, tb, payload = heapq.heappop(queue)
        if kind == 1:
            if pairs.pop(tb, None) is None:
                continue
            if deg > degree_cap:
                if truncate:
                    truncated = True
                    break
                raise GroebnerTruncation(deg, degree_cap)
            i, j = tb
            h = _spoly(red, i, j)
        else:
            if deg > degree_cap:
                if truncate:
                    truncated = True
                    break
                raise GroebnerTruncation(deg, degree_cap)
            h = red.pack_dict(payload.terms)
        if not h:
            continue
        h = red.reduce_k(h)
        if not h:
            continue
        lead, tail = red.make_monic(red.unpack_dict(h))
        idx = red.add(lead, tail)
        update(idx)
        if sum(lead) == 0:
            break

    G = _interreduce(ring, order, red)
    if truncated:
        G.truncated_at = degree_cap
    return G


def _interreduce(ring, order, red: _Reducer) -> GroebnerBasis:
    key = order.key
    act = list(red.active)
    # minimal leading set
    keep = [i for i in act
            if not any(j != i and divides(red.leads[j], red.leads[i])
                       and (red.leads[j] != red.leads[i] or j < i) for j in act)]
    keep.sort(key=lambda i: key(red.leads[i]))
    # one reducer for all tails: a lead never divides its own (smaller) tail terms
    final = _Reducer(ring, order)
    if red.dense is not None:
        final.enable_dense(red.dense.max_degree)
    for i in keep:
        final.add(red.leads[i], red.tails[i])
    leads, tails = [], []
    for i in keep:
        t = final.reduce(dict(red.tails[i]))
        leads.append(red.leads[i])
        tails.append(sorted(t.items(), key=lambda tc: key(tc[0]), reverse=True))
    return GroebnerBasis(ring, order, leads, tails, reduced=True)


def groebner_basis(ideal, order=None, degree_cap=DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    return buchberger(ideal, order, degree_cap)


def normal_form(f: Polynomial, G: GroebnerBasis, rng=None) -> Polynomial:
    return G.normal_form(f, rng)


def standard_monomials(G: GroebnerBasis, m: int) -> tuple[int, list]:
    mons = G.standard_monomials(m)
    return len(mons), mons


# -------------------------------------------------------------- elimination


def eliminate(ideal: Ideal, keep: Sequence[int | str],
              degree_cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """Generators of ``ideal`` intersected with the subring on ``keep``.

    The result lives in a ring whose variables are exactly ``keep``
    (in their original relative order).
    """
    ring = ideal.ring
    idx = sorted(ring.names.index(k) if isinstance(k, str) else k for k in keep)
    drop = [i for i in range(ring.nvars) if i not in idx]
    perm = drop + idx
    names = tuple(ring.names[i] for i in perm)
    order = MonomialOrder.elimination(len(drop))
    big = PolynomialRing(ring.field, names, order)

    def permute(g):
        return Polynomial(big, {tuple(e[i] for i in perm): c for e, c in g.terms.items()})

    G = buchberger(Ideal(big, [permute(g) for g in ideal], ideal.homogeneous), order, degree_cap)
    small = PolynomialRing(ring.field, tuple(ring.names[i] for i in idx), ring.order)
    nd = len(drop)
    out = []
    for g in G.elements:
        if all(not any(e[:nd]) for e in g.terms):
            out.append(Polynomial(small, {e[nd:]: c for e, c in g.terms.items()}))
    return Ideal(small, out, ideal.homogeneous)


def ideal_contains(G: GroebnerBasis, ideal: Ideal) -> bool:
    return all(G.contains(g) for g in ideal)


def same_ideal(a: Ideal, b: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """Equality by mutual membership of generators in each other's basis."""
    Ga = buchberger(a, degree_cap=degree_cap)
    Gb = buchberger(b, degree_cap=degree_cap)
    return ideal_contains(Ga, b) and ideal_contains(Gb, a)


def all_monomials(ring: PolynomialRing, m: int) -> list:
    return monomials_of_degree(ring.nvars, m)
