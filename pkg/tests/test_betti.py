import random
from math import comb

import pytest

from secantbetti import (QQ, BettiTable, Field, Inconclusive, Ideal, PolynomialRing,
                         alternating_sum, betti_table, buchberger, hankel_matrix, is_acm,
                         minor_ideal, n_dp_check, regularity, rnc_ideal)
from secantbetti.betti import QuotientRing, koszul_matrix, regular_sequence_reduction
from secantbetti.hilbert import HilbertData
from secantbetti import linalg

TWISTED = {(0, 0): 1, (1, 2): 3, (2, 3): 2}


def _check_alternating(t: BettiTable, G, upto=8):
    for m in range(upto + 1):
        assert alternating_sum(t, m) == G.hilbert_function(m)


@pytest.mark.parametrize("field", [Field(32003), QQ], ids=["F32003", "QQ"])
@pytest.mark.parametrize("method", ["direct", "auto"])
def test_twisted_cubic(field, method):
    G = buchberger(rnc_ideal(3, field))
    t = betti_table(G, method=method)
    assert t.entries == TWISTED
    assert t.pd == 2 and t.reg == 1
    _check_alternating(t, G)


def test_zero_ideal():
    t = betti_table(buchberger(Ideal(PolynomialRing.standard(3), [])))
    assert t.entries == {(0, 0): 1}


def test_non_acm_example():
    R = PolynomialRing.standard(4)
    G = buchberger(Ideal(R, [R.parse("x0*x1"), R.parse("x0*x2")]))
    t = betti_table(G)
    assert t.entries == {(0, 0): 1, (1, 2): 2, (2, 3): 1}
    assert is_acm(t, 1) is False


def test_direct_and_reduced_agree():
    G = buchberger(minor_ideal(hankel_matrix(5, 3), 3))
    a = betti_table(G, method="direct", max_i=4, max_row=4)
    b = betti_table(G, method="auto")
    assert a.entries == b.entries
    assert b.complete and b.method == "artinian"


def test_regular_sequence_is_certified():
    G = buchberger(rnc_ideal(5))
    hd = HilbertData.from_groebner(G)
    GJ, r, hj = regular_sequence_reduction(G, hd, seed=1)
    assert r == hd.dim and hj.dim == 0
    assert hj.reduced_numerator == hd.reduced_numerator


def test_koszul_matrices_compose_to_zero():
    Q = QuotientRing(buchberger(rnc_ideal(4)))
    F = Q.ring.field
    for i in range(1, 4):
        for j in range(i + 1, i + 4):
            A, sa = koszul_matrix(Q, i + 1, j)   # C_{i+1}(j) -> C_i(j)
            B, sb = koszul_matrix(Q, i, j)       # C_i(j) -> C_{i-1}(j)
            if 0 in sa or 0 in sb:
                continue
            assert linalg.is_zero_matrix(linalg.matmul(A, B, F))


def test_inconclusive_windows():
    G = buchberger(rnc_ideal(5))
    t = betti_table(G, method="direct", max_i=1, max_row=1)
    with pytest.raises(Inconclusive):
        is_acm(t, 3)
    with pytest.raises(Inconclusive):
        regularity(t)


def test_json_and_text_round_trip():
    t = betti_table(buchberger(rnc_ideal(4)))
    t2 = BettiTable.from_json(t.dumps(), nvars=5)
    assert t2.entries == t.entries
    text = t.format_text().splitlines()
    assert text[1].split()[0] == "total:"
    assert text[0].split() == [str(i) for i in range(t.pd + 1)]


def test_acm_section_property():
    """HF of S/(I + general linear form) is the first difference of HF(S/I) for ACM I."""
    I = minor_ideal(hankel_matrix(6, 3), 3)
    G = buchberger(I)
    t = betti_table(G)
    assert is_acm(t, 3)
    rng = random.Random(5)
    R = I.ring
    ell = R.from_terms(((tuple(int(i == v) for i in range(R.nvars)), rng.randrange(1, 32003))
                        for v in range(R.nvars)))
    Gl = buchberger(Ideal(R, list(I.generators) + [ell]))
    for m in range(1, 7):
        assert Gl.hilbert_function(m) == G.hilbert_function(m) - G.hilbert_function(m - 1)


def test_curve_diagram_p7(curve7_table, curve7_gb):
    t = curve7_table
    assert [t.total(i) for i in range(7)] == [1, 19, 58, 75, 44, 11, 2]
    assert t.row(1) == {1: 19, 2: 58, 3: 75, 4: 44, 5: 5}
    assert t.row(2) == {5: 6, 6: 2}
    assert regularity(t) == 2
    assert n_dp_check(t, 2, 4) is True and n_dp_check(t, 2, 5) is False
    _check_alternating(t, curve7_gb)


def test_sigma_diagram_p7(sigma7_table, sigma7):
    t = sigma7_table
    assert t.entries == {(0, 0): 1, (1, 3): 12, (2, 4): 16, (3, 6): 4, (3, 7): 4, (4, 8): 3}
    assert is_acm(t, 4) and regularity(t) == 4
    assert n_dp_check(t, 3, 2) is True and n_dp_check(t, 3, 3) is False
    _check_alternating(t, sigma7.groebner)


def test_two_primes_agree():
    for I_of in (lambda F: rnc_ideal(5, F),
                 lambda F: minor_ideal(hankel_matrix(6, 3, PolynomialRing.standard(7, F)), 3)):
        a = betti_table(buchberger(I_of(Field(32003))))
        b = betti_table(buchberger(I_of(Field(31013))))
        assert a.entries == b.entries


def test_two_primes_agree_on_genus2(curve7_table):
    from secantbetti import genus2_fixture
    other = betti_table(buchberger(genus2_fixture(31013, 0)))
    assert other.entries == curve7_table.entries


def test_rationals_on_quartic_secant():
    I = minor_ideal(hankel_matrix(4, 3, PolynomialRing.standard(5, QQ)), 3)
    assert betti_table(buchberger(I)).entries == {(0, 0): 1, (1, 3): 1}


@pytest.fixture(scope="module")
def curve10():
    from secantbetti import genus2_curve
    return genus2_curve(32003, 0, degree=12)


def test_curve_diagram_p10(curve10):
    G = buchberger(curve10.ideal)
    t = betti_table(G)
    assert [t.total(i) for i in range(10)] == [1, 43, 222, 558, 840, 798, 468, 147, 17, 2]
    assert t.row(2) == {8: 9, 9: 2}
    _check_alternating(t, G)


@pytest.mark.slow
def test_sigma_diagram_p10(curve10):
    from secantbetti import CurveParams, SecantSpec, secant_ideal, verify_all
    res = secant_ideal(SecantSpec(curve10.ideal, k=1, m_max=4), betti=False)
    assert res.new_generators == {3: 70, 4: 0}
    assert res.certificate["matches"] is True
    t = betti_table(res.groebner)
    assert t.entries == {(0, 0): 1, (1, 3): 70, (2, 4): 283, (3, 5): 483, (4, 6): 413,
                         (5, 7): 155, (6, 9): 7, (6, 10): 7, (7, 11): 3}
    rep = verify_all(CurveParams(g=2, d=12), t, res.hilbert)
    assert rep.ok, rep.format_text()
