import time

import numpy as np
import pytest

from isingbath.bath import ChainSpec
from isingbath.defects import product_state
from isingbath.oracles import FockBathConfig, exact_boson_evolution

# Acceptance lines collected by tests/test_acceptance.py, printed at the end of the run.
ACCEPTANCE_LINES: list[str] = []

ORACLE_TIMES = np.linspace(0.0, 50.0, 2001)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def oracle_spec():
    return ChainSpec(J=0.1, gamma=0.05, T=0.0, N=2, l=1)


@pytest.fixture(scope="session")
def fock_up_up(oracle_spec):
    """Exact truncated-Fock evolution of |up up> on the acceptance parameters."""
    cfg = FockBathConfig(N_small=2, n_max=4, t_grid=ORACLE_TIMES)
    start = time.perf_counter()
    result = exact_boson_evolution(cfg, oracle_spec, product_state(0.0, 0.0))
    result.diagnostics["elapsed"] = time.perf_counter() - start
    return result
