from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fplab", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("fplab")

LOG3_LOG2 = np.log(3) / np.log(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)

P1 = 1.77766251887019
P2 = 1.78329970946521


@pytest.fixture(scope="session")
def n5_sweep():
    from fplab.optimize import OptimizerSettings
    from fplab.transitions import sweep

    grid = np.linspace(1.75, 2.05, 100)
    return sweep(5, grid, OptimizerSettings(restarts=200, master_seed=0))


# acceptance verdicts, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
