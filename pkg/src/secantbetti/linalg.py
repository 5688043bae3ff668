"""Exact dense linear algebra over F_p (numpy int64) and Q (Fractions).

Matrices are given as a list of rows or a 2-d array.  Over F_p every entry
is reduced into ``range(p)``; since ``p < 2**31`` all intermediate products
fit in int64.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import Field


class MatrixTooLarge(MemoryError):
    def __init__(self, shape, limit):
        self.shape = shape
        super().__init__(f"matrix of shape {shape} exceeds the {limit}-entry guard")


MAX_ENTRIES = 60_000_000


def _guard(shape):
    if shape[0] * shape[1] > MAX_ENTRIES:
        raise MatrixTooLarge(shape, MAX_ENTRIES)


def _rref_modp(A: np.ndarray, p: int):
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rref_rational(rows: list[list[Fraction]]):
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ai, Ar = A[i], A[r]
                A[i] = [a - f * b for a, b in zip(Ai, Ar)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def as_matrix(rows, field: Field, ncols: int | None = None):
    """Coerce ``rows`` to the native representation for ``field``."""
    if field.p:
        A = np.array(rows, dtype=np.int64)
        if A.ndim == 1:
            A = A.reshape(0 if A.size == 0 else 1, -1) if ncols is None else A.reshape(-1, ncols)
        if A.size == 0 and ncols is not None:
            A = A.reshape(A.shape[0] if A.ndim == 2 else 0, ncols)
        _guard(A.shape)
        return A % field.p
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows, field: Field, ncols: int | None = None):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    A = as_matrix(rows, field, ncols)
    if field.p:
        if A.shape[0] == 0 or A.shape[1] == 0:
            return A[:0], []
        return _rref_modp(A.copy(), field.p)
    if not A:
        return [], []
    return _rref_rational(A)


def rank(rows, field: Field, ncols: int | None = None) -> int:
    if field.p:
        A = as_matrix(rows, field, ncols)
        if A.size == 0:
            return 0
        # eliminate on the thinner orientation
        if A.shape[0] > A.shape[1]:
            A = A.T.copy()
        return len(_rref_modp(A.copy(), field.p)[1])
    return len(rref(rows, field)[1])


def independent_rows(rows, field: Field, ncols: int) -> list[int]:
    """Indices of the rows kept by a greedy left-to-right independence scan."""
    if not len(rows):
        return []
    A = as_matrix(rows, field, ncols)
    T = A.T.copy() if field.p else [list(c) for c in zip(*A)]
    return rref(T, field, len(rows))[1]


def nullspace(rows, field: Field, ncols: int) -> list[list]:
    """Basis of ``{x : A x = 0}`` for ``A`` with ``ncols`` columns.

    The basis is in the canonical form determined by the RREF: each vector
    has a 1 in one free column and 0 in the other free columns.
    """
    R, piv = rref(rows, field, ncols)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    if field.p:
        p = field.p
        for f in free:
            v = [0] * ncols
            v[f] = 1
            for r, c in enumerate(piv):
                v[c] = int(-R[r, f] % p)
            basis.append(v)
    else:
        for f in free:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for r, c in enumerate(piv):
                v[c] = -R[r][f]
            basis.append(v)
    return basis


def row_space_basis(rows, field: Field, ncols: int) -> list[list]:
    """Canonical (RREF) basis of the row space."""
    R, _ = rref(rows, field, ncols)
    if field.p:
        return [[int(x) for x in r] for r in R]
    return [list(r) for r in R]


def matmul(A, B, field: Field):
    if field.p:
        A = np.asarray(A, dtype=np.int64) % field.p
        B = np.asarray(B, dtype=np.int64) % field.p
        # chunk the inner dimension so partial sums stay below 2**63
        p = field.p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        step = max(1, (2**62) // (p * p))
        for k in range(0, A.shape[1], step):
            out = (out + A[:, k:k + step] @ B[k:k + step]) % p
        return out
    return [[sum((a * b for a, b in zip(r, col)), Fraction(0)) for col in zip(*B)] for r in A]


def is_zero_matrix(A) -> bool:
    if isinstance(A, np.ndarray):
        return not A.any()
    return all(x == 0 for r in A for x in r)
