"""Matrices of linear forms, minor ideals, Eagon-Northcott ranks and Koszul cycles."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from . import linalg
from .field import Field, GF32003
from .groebner import DEFAULT_DEGREE_CAP, GroebnerBasis, Ideal, buchberger
from .polyring import Polynomial, PolynomialRing


class HypothesisError(ValueError):
    """A precondition of the cycle construction fails."""


# ------------------------------------------------------------ matrices


class LinearFormMatrix:
    """An (s+1) x (t+1) matrix whose entries are linear forms (or zero)."""

    def __init__(self, ring: PolynomialRing, entries: Sequence[Sequence[Polynomial]]):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        for r in rows:
            for a in r:
                if a and not (a.is_homogeneous() and a.degree() == 1):
                    raise ValueError(f"entry is not a linear form: {a}")
        self.ring = ring
        self.entries = rows

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def s(self) -> int:
        return self.shape[0] - 1

    @property
    def t(self) -> int:
        return self.shape[1] - 1

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        return "LinearFormMatrix([" + ", ".join(
            "[" + ", ".join(str(a) for a in r) + "]" for r in self.entries) + "])"

    def transpose(self) -> "LinearFormMatrix":
        return LinearFormMatrix(self.ring, [list(c) for c in zip(*self.entries)])

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "LinearFormMatrix":
        return LinearFormMatrix(self.ring, [[self.entries[i][j] for j in col_perm] for i in row_perm])

    def cross_forms(self, r: int = 0, c: int = 0) -> list[Polynomial]:
        """Entries of row ``r`` then column ``c`` (without repeating the corner)."""
        row = [self.entries[r][j] for j in range(self.shape[1])]
        col = [self.entries[i][c] for i in range(self.shape[0]) if i != r]
        return row + col

    def cross_rank(self, r: int = 0, c: int = 0) -> int:
        return linear_rank(self.cross_forms(r, c))

    def row0_col0_independent(self) -> bool:
        return self.cross_rank() == self.s + self.t + 1

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        return _minor(self, tuple(rows), tuple(cols))

    def minors(self, size: int) -> list[Polynomial]:
        if not 1 <= size <= min(self.shape):
            raise ValueError(f"minor size {size} out of range for shape {self.shape}")
        return [self.minor(r, c)
                for r in combinations(range(self.shape[0]), size)
                for c in combinations(range(self.shape[1]), size)]


def _minor(A: LinearFormMatrix, rows: tuple, cols: tuple) -> Polynomial:
    memo: dict = {}

    def det(rows, cols):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            val = A.entries[rows[0]][cols[0]]
        else:
            # cofactor expansion along the first row
            val = A.ring.zero()
            r0, rest = rows[0], rows[1:]
            for k, c in enumerate(cols):
                a = A.entries[r0][c]
                if not a:
                    continue
                sub = det(rest, cols[:k] + cols[k + 1:])
                term = a * sub
                val = val - term if k % 2 else val + term
        memo[key] = val
        return val

    return det(rows, cols)


def linear_rank(forms: Sequence[Polynomial]) -> int:
    if not forms:
        return 0
    ring = forms[0].ring
    n = ring.nvars
    rows = []
    for f in forms:
        v = [0] * n
        for e, c in f.terms.items():
            v[e.index(1)] = c
        rows.append(v)
    return linalg.rank(rows, ring.field, n)


def hankel_matrix(d: int, rows: int, ring: PolynomialRing | None = None) -> LinearFormMatrix:
    """Catalecticant ``a[i][j] = x_{i+j}`` of shape rows x (d + 2 - rows)."""
    if not 1 <= rows <= d + 1:
        raise ValueError(f"need 1 <= rows <= d + 1, got rows={rows}, d={d}")
    ring = ring or PolynomialRing.standard(d + 1)
    if ring.nvars < d + 1:
        raise ValueError("ring needs d + 1 variables")
    cols = d + 2 - rows
    return LinearFormMatrix(ring, [[ring.gen(i + j) for j in range(cols)] for i in range(rows)])


def minor_ideal(A: LinearFormMatrix, size: int) -> Ideal:
    if not 1 <= size <= min(A.shape):
        raise ValueError(f"minor size {size} out of range for shape {A.shape}")
    gens, seen = [], set()
    for m in A.minors(size):
        if m and m not in seen and -m not in seen:
            seen.add(m)
            gens.append(m)
    return Ideal(A.ring, gens)


def rnc_ideal(d: int, field: Field = GF32003) -> Ideal:
    """Rational normal curve of degree ``d`` in P^d: 2x2 minors of the 2 x d Hankel matrix."""
    if d < 2:
        raise ValueError("d >= 2 required")
    ring = PolynomialRing.standard(d + 1, field)
    return minor_ideal(hankel_matrix(d, 2, ring), 2)


def curve_from_matrix(A: LinearFormMatrix) -> Ideal:
    if A.shape[0] != 2:
        raise ValueError(f"expected a 2-row matrix, got shape {A.shape}")
    return minor_ideal(A, 2)


def en_betti(a: int, b: int, i: int) -> tuple[int, int]:
    """Eagon-Northcott prediction for maximal minors of a generic a x b matrix."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    if not 0 <= i <= b - a + 1:
        raise ValueError(f"index {i} out of range 0..{b - a + 1}")
    if i == 0:
        return 1, 0
    return comb(b, a + i - 1) * comb(a + i - 2, a - 1), a + i - 1


def en_table(a: int, b: int) -> dict:
    out = {}
    for i in range(b - a + 2):
        rank, deg = en_betti(a, b, i)
        if rank:
            out[(i, deg)] = rank
    return out


# --------------------------------------------------------------- chains


@dataclass
class KoszulChain:
    """An element of wedge^i V (x) S, stored as ``{sorted index tuple: coefficient}``.

    ``images[k]`` is the linear form that the basis vector ``e_k`` maps to
    under the Koszul differential.
    """

    ring: PolynomialRing
    images: tuple
    i: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for J, f in self.terms.items():
            J = tuple(J)
            if len(J) != self.i or list(J) != sorted(set(J)):
                raise ValueError(f"bad wedge index {J} for homological degree {self.i}")
            if f:
                clean[J] = f
        self.terms = clean

    @classmethod
    def standard_images(cls, ring: PolynomialRing) -> tuple:
        return tuple(ring.gens())

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        """Internal degree ``i + deg(coefficients)``; None for the zero chain."""
        degs = {f.degree() for f in self.terms.values()}
        if not degs:
            return None
        if len(degs) != 1:
            raise ValueError("chain is not homogeneous")
        return self.i + degs.pop()

    def boundary(self) -> "KoszulChain":
        out: dict = {}
        zero = self.ring.zero()
        for J, f in self.terms.items():
            for pos, v in enumerate(J):
                K = J[:pos] + J[pos + 1:]
                term = f * self.images[v]
                out[K] = out.get(K, zero) + (term if pos % 2 == 0 else -term)
        return KoszulChain(self.ring, self.images, self.i - 1, out)

    def __add__(self, other: "KoszulChain") -> "KoszulChain":
        out = dict(self.terms)
        zero = self.ring.zero()
        for J, f in other.terms.items():
            out[J] = out.get(J, zero) + f
        return KoszulChain(self.ring, self.images, self.i, out)


def align_matrix(A: LinearFormMatrix) -> tuple[LinearFormMatrix, int, int]:
    """Move a row/column pair with independent entries to position (0, 0).

    Returns the permuted matrix and the original indices of the chosen row
    and column.  Minor ideals are unchanged by the permutation.
    """
    need = A.s + A.t + 1
    for r in range(A.shape[0]):
        for c in range(A.shape[1]):
            if A.cross_rank(r, c) == need:
                rp = [r] + [i for i in range(A.shape[0]) if i != r]
                cp = [c] + [j for j in range(A.shape[1]) if j != c]
                return A.permuted(rp, cp), r, c
    raise HypothesisError("no row/column pair has linearly independent entries")


def build_gamma(A: LinearFormMatrix, k: int) -> KoszulChain:
    """The explicit Koszul cycle built from the (k+1)-minors avoiding row 0.

    Basis vector ``e_j`` (0 <= j <= t) maps to ``A[0][j]`` and ``e_{t+i}``
    (1 <= i <= s) maps to ``A[i][0]``.  The chain lives in homological
    degree ``s + t - 2k - 1`` with internal degree ``s + t - k``.
    """
    s, t = A.s, A.t
    if k < 0:
        raise HypothesisError("k must be nonnegative")
    if s + 1 < k + 2:
        raise HypothesisError(f"need s + 1 >= k + 2 (s={s}, k={k})")
    if not A.row0_col0_independent():
        raise HypothesisError("entries of row 0 and column 0 are linearly dependent")
    images = tuple(A.cross_forms(0, 0))
    i = s + t - 2 * k - 1
    if i < 0:
        raise HypothesisError(f"homological index s + t - 2k - 1 = {i} is negative")
    full = set(range(s + t + 1))
    terms = {}
    for sigma in combinations(range(1, s + 1), k + 1):
        sig_t = {a + t for a in sigma}
        for tau in combinations(range(t + 1), k + 1):
            det = A.minor(sigma, tau)
            if not det:
                continue
            sign = (-1) ** (sum(sigma) + sum(tau) + t * (k + 1))
            J = tuple(sorted(full - sig_t - set(tau)))
            terms[J] = det if sign > 0 else -det
    return KoszulChain(A.ring, images, i, terms)


def verify_cycle(gamma: KoszulChain, ideal: Ideal | GroebnerBasis, k: int | None = None,
                 matrix: LinearFormMatrix | None = None,
                 degree_cap: int = DEFAULT_DEGREE_CAP) -> dict:
    """Certificate that ``gamma`` gives a nonzero Koszul homology class of ``S/I``.

    Certified when the boundary is nonzero, every boundary coefficient lies
    in ``I``, the chain's coefficients have degree below the initial degree
    of ``I``, and the basis images are linearly independent (so they extend
    to a basis of the linear forms).
    """
    G = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal, degree_cap=degree_cap)
    d = gamma.boundary()
    nonzero = not d.is_zero()
    in_ideal = all(G.contains(f) for f in d.terms.values())
    deg = gamma.degree
    coef_deg = None if deg is None else deg - gamma.i
    init_deg = min((sum(e) for e in G.leading_monomials), default=None)
    low_ok = coef_deg is not None and (init_deg is None or coef_deg < init_deg)
    basis_ok = linear_rank([gamma.images[v] for v in range(len(gamma.images))]) == len(gamma.images)
    cert = {
        "boundary_nonzero": nonzero,
        "boundary_in_ideal": in_ideal,
        "coefficients_below_initial_degree": low_ok,
        "basis_independent": basis_ok,
        "position": [gamma.i, deg],
        "terms": len(gamma.terms),
        "basis": [str(f) for f in gamma.images],
    }
    if matrix is not None and k is not None:
        allowed = set()
        for m in _minors_touching_corner(matrix, k + 2):
            allowed.add(m)
            allowed.add(-m)
        cert["boundary_coefficients_are_corner_minors"] = all(
            f in allowed for f in d.terms.values())
    cert["certified"] = bool(nonzero and in_ideal and low_ok and basis_ok)
    cert["certified_nonvanishing"] = [gamma.i, deg] if cert["certified"] else None
    return cert


def _minors_touching_corner(A: LinearFormMatrix, size: int) -> list[Polynomial]:
    out = []
    R, C = A.shape
    if size > min(R, C):
        return out
    for rows in combinations(range(R), size):
        for cols in combinations(range(C), size):
            if rows[0] == 0 or cols[0] == 0:
                out.append(A.minor(rows, cols))
    return out


def cycle_certificate(A: LinearFormMatrix, k: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> dict:
    """Align ``A``, build the cycle and verify it against the (k+2)-minor ideal."""
    B, r, c = align_matrix(A)
    gamma = build_gamma(B, k)
    I = minor_ideal(B, k + 2)
    if not I.generators:
        raise HypothesisError("every (k+2)-minor vanishes")
    cert = verify_cycle(gamma, I, k=k, matrix=B, degree_cap=degree_cap)
    cert["aligned_from"] = {"row": r, "column": c}
    cert["shape"] = list(A.shape)
    cert["k"] = k
    return cert


def strand_bound_position(s: int, t: int, k: int) -> tuple[int, int]:
    return s + t - 2 * k - 1, s + t - k
