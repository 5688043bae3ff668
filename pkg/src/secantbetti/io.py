"""Text formats for ideals, matrices of linear forms and Betti tables.

Ideal file::

    ring <characteristic> <nvars>
    <name0> <name1> ...
    <polynomial>
    ...

Blank lines and lines starting with ``#`` are ignored.  A matrix file has
a third header line ``matrix <rows> <cols>`` followed by ``rows * cols``
entries in row-major order.
"""

from __future__ import annotations

import json
from pathlib import Path

from .betti import BettiTable
from .determinantal import LinearFormMatrix
from .field import Field
from .groebner import GroebnerBasis, Ideal
from .polyring import (ParseError, Polynomial, PolynomialRing, clear_denominators,
                       format_polynomial, parse_polynomial)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield lineno, raw


def _read_header(lines, want_matrix: bool = False):
    try:
        lineno, raw = next(lines)
    except StopIteration:
        raise ParseError("empty file", 1, 1) from None
    parts = raw.split()
    if len(parts) != 3 or parts[0] != "ring":
        raise ParseError("expected 'ring <characteristic> <nvars>'", 1, lineno)
    try:
        char, nvars = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("characteristic and nvars must be integers", 1, lineno) from None
    try:
        field = Field(char)
    except ValueError as exc:
        raise ParseError(str(exc), raw.index(parts[1]) + 1, lineno) from None
    try:
        lineno, raw = next(lines)
    except StopIteration:
        raise ParseError("missing variable-name line", 1, lineno + 1) from None
    names = raw.split()
    if len(names) != nvars:
        raise ParseError(f"expected {nvars} variable names, got {len(names)}", 1, lineno)
    try:
        ring = PolynomialRing(field, tuple(names))
    except ValueError as exc:
        raise ParseError(str(exc), 1, lineno) from None
    return ring


def _parse_line(text: str, ring: PolynomialRing, lineno: int) -> Polynomial:
    try:
        return parse_polynomial(text, ring)
    except ParseError as exc:
        msg = str(exc).split(" (", 1)[0]
        raise ParseError(msg, exc.column, lineno) from None


def parse_ideal(text: str, homogeneous: bool = True) -> Ideal:
    lines = _content_lines(text)
    ring = _read_header(lines)
    gens = [_parse_line(raw, ring, lineno) for lineno, raw in lines]
    for (lineno, _), g in zip(list(_content_lines(text))[2:], gens):
        if homogeneous and not g.is_homogeneous():
            raise ParseError("polynomial is not homogeneous", 1, lineno)
    return Ideal(ring, gens, homogeneous=homogeneous)


def parse_matrix(text: str) -> LinearFormMatrix:
    lines = _content_lines(text)
    ring = _read_header(lines)
    try:
        lineno, raw = next(lines)
    except StopIteration:
        raise ParseError("missing 'matrix <rows> <cols>' line", 1, 3) from None
    parts = raw.split()
    if len(parts) != 3 or parts[0] != "matrix" or not (parts[1].isdigit() and parts[2].isdigit()):
        raise ParseError("expected 'matrix <rows> <cols>'", 1, lineno)
    r, c = int(parts[1]), int(parts[2])
    entries = [_parse_line(raw, ring, ln) for ln, raw in lines]
    if len(entries) != r * c:
        raise ParseError(f"expected {r * c} matrix entries, got {len(entries)}", 1, lineno)
    for e in entries:
        if not e.is_zero() and (not e.is_homogeneous() or e.degree() != 1):
            raise ParseError(f"matrix entry is not a linear form: {format_polynomial(e)}", 1, lineno)
    return LinearFormMatrix(ring, [entries[i * c:(i + 1) * c] for i in range(r)])


def _header(ring: PolynomialRing) -> list[str]:
    return [f"ring {ring.field.characteristic} {ring.nvars}", " ".join(ring.names)]


def format_ideal(ideal: Ideal | GroebnerBasis, comment: str | None = None) -> str:
    gens = ideal.elements if isinstance(ideal, GroebnerBasis) else ideal.generators
    lines = _header(ideal.ring)
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines += [format_polynomial(clear_denominators(g)) for g in gens]
    return "\n".join(lines) + "\n"


def format_matrix(A: LinearFormMatrix) -> str:
    r, c = A.shape
    lines = _header(A.ring) + [f"matrix {r} {c}"]
    lines += [format_polynomial(A[i, j]) for i in range(r) for j in range(c)]
    return "\n".join(lines) + "\n"


def read_ideal(path: str | Path, homogeneous: bool = True) -> Ideal:
    return parse_ideal(Path(path).read_text(), homogeneous)


def read_matrix(path: str | Path) -> LinearFormMatrix:
    return parse_matrix(Path(path).read_text())


def write_ideal(ideal, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_ideal(ideal, comment))


def read_betti_json(path: str | Path, nvars: int | None = None) -> BettiTable:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.colno, exc.lineno) from None
    return BettiTable.from_json(data, nvars)


def change_field(ideal: Ideal, field: Field) -> Ideal:
    """Reinterpret an ideal over another coefficient field (rationals reduce mod p)."""
    src = ideal.ring.field
    if src == field:
        return ideal
    if not src.is_rational:
        raise ValueError(f"cannot move an ideal from characteristic {src.characteristic} "
                         f"to {field.characteristic}")
    ring = PolynomialRing(field, ideal.ring.names, ideal.ring.order)
    gens = [ring.from_terms((e, field(c)) for e, c in clear_denominators(g).terms.items())
            for g in ideal.generators]
    return Ideal(ring, gens, ideal.homogeneous)
