import numpy as np
import pytest

from jwent.basis import config_from_string
from jwent.diag import StateVector
from jwent.model import CouplingSet

# ground state of the five-site XY chain with couplings (1, 2, 2, 1), in units of 1/6
FIVE_SITE_COEFFS = {
    "↓↑↓↑↑": -2, "↑↑↓↑↓": -2, "↑↑↓↓↑": 2, "↑↓↓↑↑": 2, "↑↓↑↑↓": 2,
    "↓↑↑↓↑": 2, "↓↓↑↑↑": 1, "↑↑↑↓↓": 1, "↑↓↑↓↑": -3, "↓↑↑↑↓": -1,
}

ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def five_site_couplings():
    return CouplingSet.xy([1, 2, 2, 1])


@pytest.fixture(scope="session")
def five_site_state():
    weights = {config_from_string(k): v / 6 for k, v in FIVE_SITE_COEFFS.items()}
    return StateVector.from_configs(5, weights, normalize=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
