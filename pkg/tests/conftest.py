import pytest

from secantbetti import (GF32003, Field, SecantSpec, betti_table, buchberger, genus2_curve,
                         secant_ideal)
from secantbetti.hilbert import HilbertData

GF31013 = Field(31013)


@pytest.fixture(scope="session")
def curve7():
    """Genus-2 degree-9 curve in P^7 over F_32003, seed 0."""
    return genus2_curve(32003, 0)


@pytest.fixture(scope="session")
def curve7_gb(curve7):
    return buchberger(curve7.ideal)


@pytest.fixture(scope="session")
def curve7_table(curve7_gb):
    return betti_table(curve7_gb)


@pytest.fixture(scope="session")
def sigma7(curve7):
    return secant_ideal(SecantSpec(curve7.ideal, k=1, m_max=4), certify=True, betti=False)


@pytest.fixture(scope="session")
def sigma7_table(sigma7):
    return betti_table(sigma7.groebner)


@pytest.fixture(scope="session")
def sigma7_hilbert(sigma7) -> HilbertData:
    return sigma7.hilbert


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
