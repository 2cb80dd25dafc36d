import pytest

from gkm.examples import g2_graph
from gkm.ring import canonical_generators_H, lift_generators_to_K

ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def g2():
    return g2_graph()


@pytest.fixture(scope="session")
def g2_gens(g2):
    return canonical_generators_H(g2, require_integral=True)


@pytest.fixture(scope="session")
def g2_kgens(g2, g2_gens):
    return lift_generators_to_K(g2, g2_gens)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
