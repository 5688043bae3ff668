from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from secantbetti import Ideal, PolynomialRing, buchberger, hankel_matrix, minor_ideal, rnc_ideal
from secantbetti.hilbert import HilbertData, divide_by_one_minus_t, hilbert_numerator, minimalize
from secantbetti.polyring import monomials_of_degree


def _count_outside(gens, n, m):
    return sum(1 for e in monomials_of_degree(n, m)
               if not any(all(a <= b for a, b in zip(g, e)) for g in gens))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 3)] * 4).filter(lambda e: sum(e) > 0), max_size=6))
def test_numerator_matches_brute_force(gens):
    hd = HilbertData(hilbert_numerator(gens, 4), 4)
    for m in range(7):
        assert hd.value(m) == _count_outside(gens, 4, m)


def test_numerator_pure_powers_and_unit():
    assert hilbert_numerator([(2, 0), (0, 3)], 2) == [1, 0, -1, -1, 0, 1]
    assert hilbert_numerator([(0, 0, 0)], 3) == []
    assert hilbert_numerator([], 3) == [1]
    assert minimalize([(1, 1), (1, 0), (2, 1)]) == [(1, 0)]


def test_divide_by_one_minus_t():
    assert divide_by_one_minus_t([1, 0, -3, 2]) == [1, 1, -2]
    with pytest.raises(ValueError):
        divide_by_one_minus_t([1, 1])


def test_zero_ideal():
    G = buchberger(Ideal(PolynomialRing.standard(3), []))
    hd = HilbertData.from_groebner(G)
    assert hd.value(2) == 6 and hd.dim == 3 and hd.degree == 1


def test_twisted_cubic():
    hd = HilbertData.from_groebner(buchberger(rnc_ideal(3)))
    assert hd.numerator == [1, 0, -3, 2]
    assert (hd.dim, hd.degree) == (2, 3)
    assert [hd.polynomial(m) for m in range(6)] == [1 + 3 * m for m in range(6)]
    assert hd.value(5) == 16
    assert hd.stabilization == 0


def test_cubic_hypersurface_section_invariants():
    hd = HilbertData.from_groebner(buchberger(minor_ideal(hankel_matrix(4, 3), 3)))
    assert hd.section_invariants() == (3, 1)
    assert hd.alpha[3] == 3 and hd.alpha[2] == 0


def test_sigma_of_quintic_genus_of_section():
    hd = HilbertData.from_groebner(buchberger(minor_ideal(hankel_matrix(5, 3), 3)))
    assert hd.section_invariants() == (6, 3)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_rnc_polynomial(d):
    hd = HilbertData.from_groebner(buchberger(rnc_ideal(d)))
    assert all(hd.value(m) == d * m + 1 for m in range(1, 8))
    assert hd.value(0) == 1


def test_stabilization_is_exact():
    # x0^3 in two variables: HF = 1,2,3,3,3,...; HP = 3
    R = PolynomialRing.standard(2)
    hd = HilbertData.from_groebner(buchberger(Ideal(R, [R.parse("x0^3")])))
    assert [hd.value(m) for m in range(5)] == [1, 2, 3, 3, 3]
    assert hd.stabilization == 2
    # Artinian: HP = 0
    hd0 = HilbertData.from_groebner(buchberger(Ideal(R, [R.parse("x0^2"), R.parse("x1^2")])))
    assert hd0.dim == 0 and hd0.stabilization == 3


def test_p7_fixture_values(sigma7_hilbert):
    hd = sigma7_hilbert
    assert hd.value(3) == comb(10, 3) - 12 == 108
    assert hd.section_invariants() == (26, 35)
    assert [int(a) for a in hd.alpha] == [-2, 18, -34, 26]
    assert [hd.polynomial(m) for m in range(1, 7)] == [8, 36, 108, 250, 488, 848]
    assert hd.stabilization <= 1
