import numpy as np
import pytest

from trajrisk.sim import ProcessModel, StructureParams, VolParams

ACCEPTANCE = []


def record(criterion, passed, detail):
    ACCEPTANCE.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion:>2d}. {detail}")


@pytest.fixture
def rw_model():
    return ProcessModel("gaussian_random_walk", x0=1.0, sigma=0.1)


@pytest.fixture
def garch_model():
    return ProcessModel(
        "heteroskedastic_martingale", x0=1.0, sigma=0.01, vol_params=VolParams(1e-5, 0.1, 0.85)
    )


@pytest.fixture
def seasonal_model():
    return ProcessModel(
        "structured_seasonal", x0=2.0, sigma=0.05, structure_params=StructureParams(1.0, 24, 0.01)
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
