"""Graded Betti numbers by Koszul homology, plus regularity/ACM/N_{d,p} checks.

``beta[i, j] = dim H_i(K(x) (x) S/I)_j``: in each internal degree ``j`` the
Koszul complex of the variables over ``S/I`` is assembled in the
standard-monomial basis and ranks are taken over the coefficient field.

When the quotient admits a regular sequence of general linear forms the
computation moves to the smaller quotient ``S/(I + l)``, which has the same
graded Betti numbers over ``S/(l)``.  Regularity of the sequence is
certified exactly: the Hilbert-series numerators must coincide.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from . import linalg
from .groebner import DEFAULT_DEGREE_CAP, GroebnerBasis, Ideal, buchberger
from .hilbert import HilbertData, hilbert_numerator, _trim
from .polyring import Polynomial, PolynomialRing

log = logging.getLogger(__name__)


class Inconclusive(RuntimeError):
    """The table was truncated before the entries a check needs."""


# ------------------------------------------------------------- quotients


class QuotientRing:
    """``S/I`` with standard-monomial bases and multiplication maps."""

    def __init__(self, G: GroebnerBasis):
        self.G = G
        self.ring = G.ring
        self.nvars = G.ring.nvars
        self._index: dict[int, dict] = {}
        self._nf: dict = {}
        self._mult: dict = {}

    def basis(self, m: int) -> list:
        return self.G.standard_monomials(m)

    def dim(self, m: int) -> int:
        return len(self.basis(m))

    def index(self, m: int) -> dict:
        if m not in self._index:
            self._index[m] = {e: k for k, e in enumerate(self.basis(m))}
        return self._index[m]

    def monomial_nf(self, e) -> dict:
        """Normal form of a monomial as ``{standard exponent: coefficient}``."""
        e = tuple(e)
        nf = self._nf.get(e)
        if nf is None:
            if e in self.index(sum(e)):
                nf = {e: self.ring.field.one()}
            else:
                nf = self.G.reduce_dict({e: self.ring.field.one()})
            self._nf[e] = nf
        return nf

    def mult(self, m: int, v: int) -> list[dict]:
        """Multiplication by ``x_v`` from degree m to m+1: one sparse column per basis element."""
        key = (m, v)
        if key not in self._mult:
            idx = self.index(m + 1)
            cols = []
            for s in self.basis(m):
                e = list(s)
                e[v] += 1
                cols.append({idx[t]: c for t, c in self.monomial_nf(e).items()})
            self._mult[key] = cols
        return self._mult[key]


# ---------------------------------------------------------------- Koszul


def koszul_matrix(Q: QuotientRing, i: int, j: int):
    """Matrix of d_i: wedge^i V (x) (S/I)_{j-i} -> wedge^{i-1} V (x) (S/I)_{j-i+1}.

    Rows index the source basis ``(J, s)``, columns the target basis.
    Returns ``(matrix, (nrows, ncols))``; over F_p the matrix is a numpy
    array, over Q a list of Fraction rows.
    """
    n = Q.nvars
    F = Q.ring.field
    q = j - i
    src_b = Q.basis(q) if q >= 0 and i >= 1 else []
    tgt_b = Q.basis(q + 1) if q + 1 >= 0 and i >= 1 else []
    src_w = list(combinations(range(n), i)) if i >= 1 else []
    tgt_w = list(combinations(range(n), i - 1)) if i >= 1 else []
    nrows = len(src_w) * len(src_b)
    ncols = len(tgt_w) * len(tgt_b)
    if F.p:
        linalg._guard((nrows, ncols))
        M = np.zeros((nrows, ncols), dtype=np.int64)
    else:
        M = [[0] * ncols for _ in range(nrows)]
    if nrows == 0 or ncols == 0:
        return M, (nrows, ncols)
    widx = {w: k for k, w in enumerate(tgt_w)}
    nb = len(tgt_b)
    ns = len(src_b)
    p = F.p
    for a, J in enumerate(src_w):
        for pos, v in enumerate(J):
            sign = -1 if pos % 2 else 1
            base = widx[J[:pos] + J[pos + 1:]] * nb
            cols = Q.mult(q, v)
            for b, col in enumerate(cols):
                r = a * ns + b
                for t, c in col.items():
                    if p:
                        M[r, base + t] = (M[r, base + t] + sign * c) % p
                    else:
                        M[r][base + t] += sign * c
    return M, (nrows, ncols)


def _koszul_rank(Q: QuotientRing, i: int, j: int, cache: dict) -> int:
    key = (i, j)
    if key not in cache:
        if i < 1 or i > Q.nvars or j - i < 0:
            cache[key] = 0
        else:
            M, shape = koszul_matrix(Q, i, j)
            cache[key] = 0 if 0 in shape else linalg.rank(M, Q.ring.field, shape[1])
    return cache[key]


def _chain_dim(Q: QuotientRing, i: int, j: int) -> int:
    if i < 0 or i > Q.nvars or j - i < 0:
        return 0
    return comb(Q.nvars, i) * Q.dim(j - i)


def koszul_betti(Q: QuotientRing, max_i: int, max_row: int) -> dict:
    """``{(i, j): beta}`` for ``i <= max_i`` and ``j - i <= max_row`` (nonzero only)."""
    cache: dict = {}
    out = {}
    for i in range(0, min(max_i, Q.nvars) + 1):
        for row in range(0, max_row + 1):
            j = i + row
            dimc = _chain_dim(Q, i, j)
            if dimc == 0:
                continue
            b = dimc - _koszul_rank(Q, i, j, cache) - _koszul_rank(Q, i + 1, j, cache)
            if b:
                out[(i, j)] = b
    return out


# ---------------------------------------------------------- Betti tables


@dataclass
class BettiTable:
    """Graded Betti numbers of ``S/I`` over ``S = K[x_0..x_n]``.

    ``entries`` holds the nonzero ``beta[i, j]``.  ``max_i``/``max_row`` is
    the window that was computed; ``complete`` means every nonzero entry is
    known to lie inside it.
    """

    entries: dict
    nvars: int
    max_i: int
    max_row: int
    complete: bool = False
    codim: int | None = None
    method: str = "direct"
    meta: dict = field(default_factory=dict)

    def __getitem__(self, ij) -> int:
        return self.entries.get(tuple(ij), 0)

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def pd(self) -> int:
        return max((i for (i, j), b in self.entries.items() if b), default=0)

    @property
    def reg(self) -> int:
        return max((j - i for (i, j), b in self.entries.items() if b), default=0)

    def total(self, i: int) -> int:
        return sum(b for (a, j), b in self.entries.items() if a == i)

    def row(self, r: int) -> dict[int, int]:
        return {i: b for (i, j), b in self.entries.items() if j - i == r}

    def copy(self) -> "BettiTable":
        return BettiTable(dict(self.entries), self.nvars, self.max_i, self.max_row,
                          self.complete, self.codim, self.method, dict(self.meta))

    # window bookkeeping
    def covers_columns(self, upto: int) -> bool:
        return self.complete or self.max_i >= upto

    def rows_closed(self) -> bool:
        """True when no nonzero entry can lie below the computed rows."""
        return self.complete or self.max_row > self.reg

    # -- output
    def to_json(self) -> dict:
        return {"pd": self.pd, "reg": self.reg,
                "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items()) if b]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict | str, nvars: int | None = None) -> "BettiTable":
        if isinstance(data, str):
            data = json.loads(data)
        entries = {(int(i), int(j)): int(b) for i, j, b in data["entries"] if b}
        pd = max((i for i, j in entries), default=0)
        reg = max((j - i for i, j in entries), default=0)
        n = nvars if nvars is not None else data.get("nvars", pd)
        return cls(entries, n, pd, reg, complete=True, method="file")

    def format_text(self) -> str:
        """Diagram in the usual layout: column i, row r holds beta[i, i+r]."""
        pd, reg = self.pd, self.reg
        cols = list(range(pd + 1))
        totals = [self.total(i) for i in cols]
        cells = [[str(self.get(i, i + r)) if self.get(i, i + r) else "-" for i in cols]
                 for r in range(reg + 1)]
        widths = [max(len(str(i)), len(str(totals[i])), *(len(c[i]) for c in cells)) for i in cols]
        labels = ["total:"] + [f"{r}:" for r in range(reg + 1)]
        lw = max(len(x) for x in labels)
        lines = [" " * lw + " " + " ".join(str(i).rjust(w) for i, w in zip(cols, widths))]
        lines.append(labels[0].rjust(lw) + " " + " ".join(str(t).rjust(w) for t, w in zip(totals, widths)))
        for r in range(reg + 1):
            lines.append(labels[r + 1].rjust(lw) + " " + " ".join(c.rjust(w) for c, w in zip(cells[r], widths)))
        return "\n".join(lines)

    def __str__(self):
        return self.format_text()


# ------------------------------------------------------ regular sequences


def _restrict_ideal(G: GroebnerBasis, r: int, rng: random.Random) -> tuple[Ideal, list]:
    """Substitute the last ``r`` variables by random combinations of the rest.

    Returns the image ideal in the first ``n - r`` variables and the
    substitution coefficients (one row per eliminated variable).
    """
    ring = G.ring
    n = ring.nvars
    keep = n - r
    F = ring.field
    small = PolynomialRing(F, ring.names[:keep], ring.order)
    coeffs = []
    images = [small.gen(i) for i in range(keep)]
    for _ in range(r):
        row = [F(rng.randrange(1, F.p)) if F.p else F(rng.randrange(-9, 10)) for _ in range(keep)]
        coeffs.append(row)
        terms = {}
        for i, c in enumerate(row):
            e = [0] * keep
            e[i] = 1
            terms[tuple(e)] = c
        images.append(small.from_terms(terms))
    from .polyring import substitute

    gens = []
    for g in G.elements:
        h = substitute(g, images, small)
        if h:
            gens.append(h)
    return Ideal(small, gens), coeffs


def regular_sequence_reduction(G: GroebnerBasis, hd: HilbertData | None = None,
                               seed: int = 0, tries: int = 3,
                               degree_cap: int = DEFAULT_DEGREE_CAP):
    """Cut ``S/I`` by as many general linear forms as form a regular sequence.

    Tries the full Krull dimension first.  A choice of ``r`` forms is
    accepted only when the Hilbert-series numerator is unchanged, which holds
    exactly when the forms are a regular sequence.  Returns
    ``(GroebnerBasis of the image, r, hilbert data of the image)``.
    """
    hd = hd or HilbertData.from_groebner(G)
    target = _trim(hd.numerator)
    rng = random.Random(seed)
    for r in range(min(hd.dim, G.ring.nvars), 0, -1):
        for _ in range(tries):
            J, coeffs = _restrict_ideal(G, r, rng)
            GJ = buchberger(J, degree_cap=degree_cap)
            num = _trim(hilbert_numerator(GJ.leading_monomials, GJ.ring.nvars))
            if num == target:
                return GJ, r, HilbertData(num, GJ.ring.nvars)
    return G, 0, hd


def betti_table(G: GroebnerBasis, max_i: int | None = None, max_row: int | None = None,
                method: str = "auto", seed: int = 0,
                degree_cap: int = DEFAULT_DEGREE_CAP) -> BettiTable:
    """Graded Betti table of ``S/I`` from a reduced Groebner basis of ``I``.

    ``method='direct'`` builds the Koszul complex over ``S/I`` itself inside
    the window ``i <= max_i``, ``j - i <= max_row``.  ``method='auto'``
    first cuts by a certified regular sequence of general linear forms; when
    the cut is Artinian the whole table is computed and marked complete.
    """
    n = G.ring.nvars
    hd = HilbertData.from_groebner(G)
    codim = n - hd.dim
    if max_i is None:
        max_i = codim + 1
    if max_row is None:
        max_row = 5
    if method not in ("auto", "direct"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto" and hd.dim > 0:
        GJ, r, hj = regular_sequence_reduction(G, hd, seed=seed, degree_cap=degree_cap)
    else:
        GJ, r, hj = G, 0, hd
    Q = QuotientRing(GJ)
    if hj.dim == 0:
        top = len(hj.reduced_numerator) - 1
        entries = koszul_betti(Q, Q.nvars, top)
        return BettiTable(entries, n, max(Q.nvars, max_i), max(top, max_row), complete=True,
                          codim=codim, method="artinian" if r else "direct",
                          meta={"regular_sequence_length": r})
    entries = koszul_betti(Q, max_i, max_row)
    return BettiTable(entries, n, max_i, max_row, complete=False, codim=codim,
                      method="reduced" if r else "direct", meta={"regular_sequence_length": r})


# --------------------------------------------------------------- checks


def is_acm(t: BettiTable, codim: int) -> bool:
    """Auslander-Buchsbaum: ACM iff the projective dimension equals the codimension."""
    if not t.covers_columns(codim + 1):
        raise Inconclusive(f"table computed through column {t.max_i}, need {codim + 1}")
    return t.pd == codim


def regularity(t: BettiTable) -> int:
    if not t.rows_closed():
        raise Inconclusive(f"last computed row {t.max_row} is nonzero")
    return t.reg


def n_dp_check(t: BettiTable, d: int, p: int) -> bool:
    """Ideal generated in degree ``d`` with linear syzygies through step ``p``."""
    if not t.covers_columns(p) or not t.rows_closed():
        raise Inconclusive("table too small for the N_{d,p} check")
    for (i, j), b in t.entries.items():
        if not b or i == 0:
            continue
        if 1 <= i <= p and j != i + d - 1:
            return False
    return True


def alternating_sum(t: BettiTable, m: int) -> int:
    """``sum (-1)^i beta[i,j] C(n + m - j, n)`` with ``n + 1`` variables."""
    n = t.nvars - 1
    total = 0
    for (i, j), b in t.entries.items():
        if m - j >= 0:
            total += (-1) ** i * b * comb(n + m - j, n)
    return total


def betti_from_ideal(ideal: Ideal, **kw) -> BettiTable:
    return betti_table(buchberger(ideal, degree_cap=kw.pop("degree_cap", DEFAULT_DEGREE_CAP)), **kw)
