from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from secantbetti import GF32003, GREVLEX, LEX, QQ, Field, MonomialOrder, ParseError, PolynomialRing
from secantbetti.polyring import (format_polynomial, homogeneous_components, monomials_of_degree,
                                  substitute)

R = PolynomialRing.standard(4)
RQ = PolynomialRing.standard(3, QQ)


def test_field_validation():
    assert Field(0).is_rational
    for bad in (1, 4, 9, 2, -3, 2**31 + 11):
        with pytest.raises(ValueError):
            Field(bad)
    F = Field(101)
    assert F.mul(F.inv(7), 7) == 1
    assert F(Fraction(1, 2)) == 51
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    assert F.signed(100) == -1


def test_parse_and_format():
    f = R.parse("3*x0^2*x1 - x2*x3")
    assert format_polynomial(f) == "3*x0^2*x1 - x2*x3"
    assert R.parse(" x0 * x1 + 2 ") == R.gen(0) * R.gen(1) + R.constant(2)
    with pytest.raises(ParseError):
        R.parse("(x0 + x1)^2")
    assert R.parse("x0 - x0") == R.zero()


@pytest.mark.parametrize("text,col", [("3x0", 2), ("x0 ++", 5), ("x9", 1), ("x0^", 3), ("", 1)])
def test_parse_errors_report_column(text, col):
    with pytest.raises(ParseError) as exc:
        R.parse(text)
    assert exc.value.column == col


def test_rational_coefficients():
    f = RQ.parse("x0^2 - 3*x1*x2")
    assert (f * f).leading_coefficient() == 1
    half = f.scale(Fraction(1, 2))
    assert half + half == f


def test_monomials_of_degree_counts():
    from math import comb
    for n in range(1, 5):
        for m in range(5):
            mons = monomials_of_degree(n, m)
            assert len(mons) == comb(n + m - 1, m) == len(set(mons))


def test_grevlex_example_orders():
    x0, x1, x2, x3 = R.gens()
    assert (x1 ** 2).leading_monomial() == (0, 2, 0, 0)
    assert (x1 ** 2 + x0 * x2).leading_monomial(GREVLEX) == (0, 2, 0, 0)
    assert (x1 ** 2 + x0 * x2).leading_monomial(LEX) == (1, 0, 1, 0)


def test_substitute_and_components():
    x0, x1, x2, x3 = R.gens()
    f = x0 * x1 - x2 ** 2
    g = substitute(f, [x0 + x1, x1, x3, x3])
    assert g == (x0 + x1) * x1 - x3 ** 2
    comps = homogeneous_components(f + x0 + R.one())
    assert set(comps) == {0, 1, 2}


# ---------------------------------------------------------------- orders

EXPS = [e for m in range(5) for e in monomials_of_degree(4, m)]


@pytest.mark.parametrize("order", [GREVLEX, LEX, MonomialOrder.elimination(2)], ids=str)
def test_order_is_total_and_multiplicative(order):
    keys = [order.key(e) for e in EXPS]
    assert len(set(keys)) == len(EXPS)
    rank = {e: r for r, e in enumerate(sorted(EXPS, key=order.key))}
    small = [e for e in EXPS if sum(e) <= 2]
    for a, b in product(small, small):
        if a == b:
            continue
        for c in small:
            ac = tuple(x + y for x, y in zip(a, c))
            bc = tuple(x + y for x, y in zip(b, c))
            if ac in rank and bc in rank:
                assert (rank[a] < rank[b]) == (rank[ac] < rank[bc])
    one = (0, 0, 0, 0)
    assert all(order.key(one) < order.key(e) for e in EXPS if e != one)


def test_elimination_order_prefers_first_block():
    E = MonomialOrder.elimination(1)
    assert E.key((1, 0, 0)) > E.key((0, 5, 5))


# ------------------------------------------------------------ ring axioms

F7 = Field(7)
R7 = PolynomialRing.standard(3, F7)

coef = st.integers(0, 6)
mono = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(mono, coef, max_size=5).map(lambda d: R7.from_terms(d))


@settings(max_examples=1000, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R7.zero()
    assert a * R7.one() == a
    assert a + R7.zero() == a


@settings(max_examples=200, deadline=None)
@given(polys)
def test_format_parse_roundtrip(a):
    assert R7.parse(format_polynomial(a)) == a


@settings(max_examples=200, deadline=None)
@given(polys, polys, st.tuples(coef, coef, coef))
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) % 7
    assert (a + b).evaluate(pt) == (a.evaluate(pt) + b.evaluate(pt)) % 7


def test_ring_mismatch():
    from secantbetti import RingMismatch
    with pytest.raises(RingMismatch):
        R.gen(0) + R7.gen(0)
