import pytest

from semiclassical_entropy import (Grid1D, PotentialSpec, ThermalSpec, diagonalize, suggest_grid,
                                   thermal_wigner_series)


@pytest.fixture(scope="session")
def harmonic():
    return ThermalSpec(1.0, PotentialSpec.harmonic(1.0))


@pytest.fixture(scope="session")
def quartic():
    return ThermalSpec(1.0, PotentialSpec.quartic(1.0))


@pytest.fixture(scope="session")
def grid512(harmonic):
    return suggest_grid(harmonic, hbar=1.0, n=512)


@pytest.fixture(scope="session")
def grid256(harmonic):
    return suggest_grid(harmonic, hbar=1.0, n=256)


@pytest.fixture(scope="session")
def thermal_series(harmonic, grid512):
    return thermal_wigner_series(harmonic, grid512)


@pytest.fixture(scope="session")
def thermal_series256(harmonic, grid256):
    return thermal_wigner_series(harmonic, grid256)


@pytest.fixture(scope="session")
def ho_spectrum():
    """Harmonic oscillator, m = omega = hbar = 1, default fd5 box."""
    return diagonalize(PotentialSpec.harmonic(1.0), Grid1D(-12.0, 12.0, 2001), 1.0)


# acceptance criterion -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
