"""Genus-2 curves of degree 7..14 from a plane quintic with four nodes.

Plane curves of degree ``a`` double at four general points restrict to the
normalization ``C`` of a nodal quintic ``F`` (geometric genus 6 - 4 = 2)
with degree ``5a - 16``.  Degree 9 uses quintics (``F`` itself is the one
member vanishing on C), degrees 10..14 use sextics modulo ``F`` times linear
forms; forcing the system through ``b`` chosen points of C lowers the
degree by ``b``.  The complete, nonspecial system embeds C in ``P^(d-2)``.
The image ideal is recovered from F_p-points by interpolation and checked
against the Hilbert function ``d m - 1``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import linalg
from .field import Field, GF32003
from .groebner import Ideal, buchberger
from .hilbert import HilbertData
from .polyring import PolynomialRing, monomials_of_degree

log = logging.getLogger(__name__)



def plane_monomials(a: int) -> list[tuple[int, int]]:
    """Exponents (i, j) of x^i y^j z^(a-i-j)."""
    return [(i, j) for i in range(a + 1) for j in range(a + 1 - i)]


QUINTIC = plane_monomials(5)
MIN_POINTS = 60
DEGREES = range(7, 15)


class FixtureError(RuntimeError):
    def __init__(self, msg: str, seeds_tried: list):
        self.seeds_tried = seeds_tried
        super().__init__(f"{msg}; seeds tried: {', '.join(seeds_tried)}")


class _Retry(Exception):
    pass


@dataclass
class Genus2Curve:
    ideal: Ideal
    degree: int
    points: list = field(repr=False)
    nodes: list
    quintic: dict = field(repr=False)
    sections: list = field(repr=False)
    base_points: list = field(default_factory=list)
    attempt_seed: str = ""

    @property
    def ring(self) -> PolynomialRing:
        return self.ideal.ring


def _condition_rows(a: int, b: int, p: int, mons=QUINTIC) -> list[list[int]]:
    """F, F_x, F_y at the affine point (a, b) as linear forms in the coefficients."""
    val, dx, dy = [], [], []
    for i, j in mons:
        val.append(pow(a, i, p) * pow(b, j, p) % p)
        dx.append(i * pow(a, i - 1, p) * pow(b, j, p) % p if i else 0)
        dy.append(j * pow(a, i, p) * pow(b, j - 1, p) % p if j else 0)
    return [val, dx, dy]


def _eval(coefs: dict, x: int, y: int, p: int) -> int:
    return sum(c * pow(x, i, p) * pow(y, j, p) for (i, j), c in coefs.items()) % p


def _partial(coefs: dict, var: int) -> dict:
    out = {}
    for (i, j), c in coefs.items():
        e = (i, j)[var]
        if e:
            key = (i - 1, j) if var == 0 else (i, j - 1)
            out[key] = c * e
    return out


def _roots_in_y(coefs: dict, x0: int, p: int) -> list[int]:
    """All y in F_p with F(x0, y, 1) = 0, by evaluation over the whole field."""
    cy = [0] * 6
    for (i, j), c in coefs.items():
        cy[j] = (cy[j] + c * pow(x0, i, p)) % p
    ys = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(cy):
        acc = (acc * ys + c) % p
    return [int(y) for y in np.flatnonzero(acc == 0)]


def _interpolate(points: list, nvars: int, m: int, F: Field) -> tuple[list, list]:
    mons = monomials_of_degree(nvars, m)
    p = F.p
    rows = []
    for pt in points:
        row = []
        for e in mons:
            v = 1
            for x, k in zip(pt, e):
                if k:
                    v = v * pow(x, k, p) % p
            row.append(v)
        rows.append(row)
    return linalg.nullspace(rows, F, len(mons)), mons


def _linear_system(degree: int) -> tuple[int, int]:
    """(plane degree a, number of base points b) with 5a - 16 - b = degree."""
    a = 5 if degree <= 9 else 6
    return a, 5 * a - 16 - degree


def _sample_points(rng, quintic, fx, fy, nodes, count, p):
    node_set = set(nodes)
    pts: list = []
    seen = set()
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > 40 * count:
            raise _Retry("too few F_p-points found")
        x0 = rng.randrange(p)
        for y0 in _roots_in_y(quintic, x0, p):
            if (x0, y0) in node_set or (x0, y0) in seen:
                continue
            if not _eval(fx, x0, y0, p) and not _eval(fy, x0, y0, p):
                raise _Retry(f"extra singular point {(x0, y0)}")
            seen.add((x0, y0))
            pts.append((x0, y0))
    return pts


def _sections(rng, F, nodes, base, quintic, a, n_sections):
    """Degree-a forms double at the nodes through ``base``, complementary to F * S_(a-5)."""
    p = F.p
    mons = plane_monomials(a)
    cond = [r for u, v in nodes for r in _condition_rows(u, v, p, mons)]
    cond += [_condition_rows(u, v, p, mons)[0] for u, v in base]
    ker = linalg.nullspace(cond, F, len(mons))
    col = {e: c for c, e in enumerate(mons)}
    multiples = []
    for i, j in plane_monomials(a - 5):
        row = [0] * len(mons)
        for (k, l), c in quintic.items():
            row[col[(i + k, j + l)]] = c
        multiples.append(row)
    if len(ker) != len(multiples) + n_sections:
        raise _Retry(f"degree-{a} system has dimension {len(ker)}, expected "
                     f"{len(multiples) + n_sections}")
    combos = []
    for _ in range(n_sections):
        coef = [rng.randrange(p) for _ in ker]
        combos.append([sum(c * v for c, v in zip(coef, col_)) % p for col_ in zip(*ker)])
    if linalg.rank(multiples + combos, F, len(mons)) != len(ker):
        raise _Retry("sections do not complete F * S_(a-5)")
    return [{mons[c]: v for c, v in enumerate(row) if v} for row in combos]


def _attempt(F: Field, rng: random.Random, n_points: int, degree: int = 9) -> Genus2Curve:
    p = F.p
    a, b = _linear_system(degree)
    n = degree - 2
    nodes = [(rng.randrange(p), rng.randrange(p)) for _ in range(4)]
    cond = [r for u, v in nodes for r in _condition_rows(u, v, p)]
    ker = linalg.nullspace(cond, F, len(QUINTIC))
    if len(ker) != 9:
        raise _Retry(f"quintics double at the nodes: dimension {len(ker)}, expected 9")
    mix = [[rng.randrange(p) for _ in range(9)] for _ in range(9)]
    if linalg.rank(mix, F, 9) != 9:
        raise _Retry("singular mixing matrix")
    combos = [[sum(mix[r][s] * ker[s][c] for s in range(9)) % p for c in range(len(QUINTIC))]
              for r in range(9)]
    quintic = {QUINTIC[c]: v for c, v in enumerate(combos[0]) if v}
    fx, fy = _partial(quintic, 0), _partial(quintic, 1)
    fxx, fxy, fyy = _partial(fx, 0), _partial(fx, 1), _partial(fy, 1)
    for u, v in nodes:
        hess = (_eval(fxx, u, v, p) * _eval(fyy, u, v, p) - _eval(fxy, u, v, p) ** 2) % p
        if not hess:
            raise _Retry(f"singular point {u, v} is not an ordinary node")
    affine = _sample_points(rng, quintic, fx, fy, nodes, n_points + b, p)
    base, affine = affine[:b], affine[b:]
    if a == 5 and b == 0:
        sections = [{QUINTIC[c]: v for c, v in enumerate(row) if v} for row in combos[1:]]
    else:
        sections = _sections(rng, F, nodes, base, quintic, a, n + 1)
    pts = []
    for x0, y0 in affine:
        img = tuple(_eval(s, x0, y0, p) for s in sections)
        if not any(img):
            raise _Retry(f"base point at {(x0, y0)}")
        pts.append(img)
    if len(set(pts)) != len(pts):
        raise _Retry("two sample points have the same image")
    ring = PolynomialRing.standard(n + 1, F)
    ker2, mons = _interpolate(pts, n + 1, 2, F)
    n_quadrics = comb(n + 2, 2) - (2 * degree - 1)
    if len(ker2) != n_quadrics:
        raise _Retry(f"{len(ker2)} quadrics through the image, expected {n_quadrics}")
    quadrics = [ring.from_terms((mons[i], c) for i, c in enumerate(v) if c) for v in ker2]
    ideal = Ideal(ring, quadrics)
    G = buchberger(ideal)
    for m in (3, 4):
        if G.hilbert_function(m) != degree * m - 1:
            raise _Retry(f"HF({m}) = {G.hilbert_function(m)}, expected {degree * m - 1}")
        ker_m, _ = _interpolate(pts, n + 1, m, F)
        if len(ker_m) != comb(m + n, n) - (degree * m - 1):
            raise _Retry(f"degree-{m} interpolation gave {len(ker_m)} forms")
    hd = HilbertData.from_groebner(G)
    if hd.dim != 2 or hd.degree != degree or hd.polynomial(0) != -1:
        raise _Retry(f"Hilbert polynomial is not {degree}m - 1")
    return Genus2Curve(ideal, degree, pts, nodes, quintic, sections, base)


def genus2_curve(p: int = 32003, seed: int = 0, n_points: int = MIN_POINTS,
                 max_attempts: int = 10, degree: int = 9) -> Genus2Curve:
    """The curve with its sample points, nodes and defining linear system."""
    if p < 101:
        raise ValueError("genus-2 fixture needs p >= 101")
    if degree not in DEGREES:
        raise ValueError(f"degree must be in {DEGREES.start}..{DEGREES.stop - 1}")
    n = degree - 2
    # enough points to pin down quartics on the curve
    n_points = max(n_points, comb(n + 2, 2) + 1, 4 * degree + 8)
    F = Field(p) if p != GF32003.p else GF32003
    tried = []
    for attempt in range(max_attempts):
        tag = f"genus2:{seed}:{attempt}" if degree == 9 else f"genus2-d{degree}:{seed}:{attempt}"
        tried.append(tag)
        try:
            curve = _attempt(F, random.Random(tag), n_points, degree)
        except _Retry as exc:
            log.info("fixture attempt %s rejected: %s", tag, exc)
            continue
        curve.attempt_seed = tag
        return curve
    raise FixtureError("no valid genus-2 curve constructed", tried)


def genus2_fixture(p: int = 32003, seed: int = 0, degree: int = 9) -> Ideal:
    """Ideal of a linearly normal genus-2 curve of degree d in P^(d-2) over F_p.

    The default is the degree-9 curve in P^7 cut out by 19 quadrics.
    """
    return genus2_curve(p, seed, degree=degree).ideal
