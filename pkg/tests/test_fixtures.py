from math import comb

import pytest

from secantbetti import GF32003, buchberger, genus2_curve, genus2_fixture
from secantbetti.fixtures import FixtureError, QUINTIC
from secantbetti.hilbert import HilbertData


def test_nineteen_quadrics(curve7):
    I = curve7.ideal
    assert len(I.generators) == 19
    assert all(g.degree() == 2 for g in I.generators)
    assert I.ring.nvars == 8 and I.ring.field == GF32003


def test_hilbert_function(curve7_gb):
    assert curve7_gb.hilbert_function(1) == 8
    assert curve7_gb.hilbert_function(2) == 17
    hd = HilbertData.from_groebner(curve7_gb)
    assert hd.degree == 9 and hd.dim == 2
    assert [hd.polynomial(m) for m in range(4)] == [-1, 8, 17, 26]


def test_points_lie_on_curve(curve7):
    for pt in curve7.points:
        assert all(g.evaluate(pt) == 0 for g in curve7.ideal.generators)


def test_nodes_are_singular(curve7):
    from secantbetti.fixtures import _eval, _partial
    p = curve7.ring.field.p
    F = curve7.quintic
    fx, fy = _partial(F, 0), _partial(F, 1)
    for a, b in curve7.nodes:
        assert _eval(F, a, b, p) == 0 and _eval(fx, a, b, p) == 0 and _eval(fy, a, b, p) == 0
    assert set(F) <= set(QUINTIC)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_other_seeds_give_same_hilbert_function(seed):
    c = genus2_curve(32003, seed)
    G = buchberger(c.ideal)
    assert [G.hilbert_function(m) for m in range(6)] == [1, 8, 17, 26, 35, 44]
    assert c.attempt_seed.startswith(f"genus2:{seed}:")


def test_deterministic():
    a, b = genus2_fixture(32003, 4), genus2_fixture(32003, 4)
    assert a.generators == b.generators


def test_second_prime():
    I = genus2_fixture(31013, 0)
    assert I.ring.field.p == 31013
    assert len(I.generators) == 19


def test_small_prime_rejected():
    with pytest.raises(ValueError):
        genus2_curve(97)


def test_exhausted_attempts_report_seeds(monkeypatch):
    from secantbetti import fixtures

    def always_retry(*args):
        raise fixtures._Retry("forced")

    monkeypatch.setattr(fixtures, "_attempt", always_retry)
    with pytest.raises(FixtureError) as info:
        genus2_curve(32003, 9, max_attempts=3)
    assert info.value.seeds_tried == ["genus2:9:0", "genus2:9:1", "genus2:9:2"]


def test_degree_range_checked():
    with pytest.raises(ValueError):
        genus2_curve(32003, 0, degree=6)
    with pytest.raises(ValueError):
        genus2_curve(32003, 0, degree=15)


@pytest.mark.parametrize("degree", [8, 10])
def test_other_degrees(degree):
    c = genus2_curve(32003, 0, degree=degree)
    n = degree - 2
    assert c.ring.nvars == n + 1
    assert len(c.ideal.generators) == comb(n + 2, 2) - (2 * degree - 1)
    G = buchberger(c.ideal)
    assert [G.hilbert_function(m) for m in range(1, 5)] == [n + 1] + [degree * m - 1 for m in (2, 3, 4)]
    assert len(c.base_points) == 5 * (5 if degree <= 9 else 6) - 16 - degree
