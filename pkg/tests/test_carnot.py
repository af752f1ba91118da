import math

import pytest

from semiclassical_entropy import (CarnotSpec, Grid1D, PotentialSpec, ThermalSpec, WorkSeries,
                                   carnot_work_exact, carnot_work_series, harmonic_carnot_w2,
                                   suggest_grid)
from semiclassical_entropy.errors import ConfigError
from semiclassical_entropy.thermal import harmonic_entropy

SPEC = CarnotSpec.harmonic(2.0, 1.0, 2.0, 1.0)


@pytest.fixture(scope="module")
def grid():
    # the softer substance at beta_h sets the box
    return suggest_grid(ThermalSpec(0.5, PotentialSpec.harmonic(1.0)), 1.0, 512)


def test_spec_validation():
    with pytest.raises(ConfigError):
        CarnotSpec.harmonic(1.0, 2.0, 2.0, 1.0)
    with pytest.raises(ConfigError):
        CarnotSpec.harmonic(1.0, 1.0, 2.0, 1.0)
    with pytest.raises(ConfigError):
        CarnotSpec.harmonic(2.0, 0.0, 2.0, 1.0)
    with pytest.raises(ConfigError):
        CarnotSpec(2.0, 1.0, PotentialSpec.harmonic(1.0), PotentialSpec.quartic(1.0))
    with pytest.raises(ConfigError):
        WorkSeries(math.nan, 0.0, 0.0)


def test_series_coefficients(grid):
    ws = carnot_work_series(SPEC, grid)
    assert ws.w0 == pytest.approx(math.log(2.0), abs=1e-6)
    assert ws.w1 == 0.0
    assert ws.w2 == pytest.approx(-0.03125, abs=1e-6)


def test_closed_form():
    assert harmonic_carnot_w2(2.0, 1.0, 2.0, 1.0) == pytest.approx(-0.03125, abs=1e-15)
    assert harmonic_carnot_w2(2.0, 2.0, 2.0, 1.0) == 0.0
    assert harmonic_carnot_w2(3.0, 1.0, 1.5, 1.5) == 0.0


def test_swapping_substances_flips_sign(grid):
    ws, wr = carnot_work_series(SPEC, grid), carnot_work_series(SPEC.swapped(), grid)
    assert wr.w0 == pytest.approx(-ws.w0, abs=1e-12)
    assert wr.w2 == pytest.approx(-ws.w2, abs=1e-12)


def test_equal_substances_do_no_work(grid):
    ws = carnot_work_series(CarnotSpec.harmonic(2.0, 1.0, 1.3, 1.3), grid)
    assert (ws.w0, ws.w1, ws.w2) == (0.0, 0.0, 0.0)


def test_series_does_not_depend_on_grid_hbar():
    th = ThermalSpec(0.5, PotentialSpec.harmonic(1.0))
    a = carnot_work_series(SPEC, suggest_grid(th, 1.0, 512))
    b = carnot_work_series(SPEC, suggest_grid(th, 0.2, 512))
    assert a.w0 == pytest.approx(b.w0, abs=1e-8)
    assert a.w2 == pytest.approx(b.w2, abs=1e-8)


def test_exact_work_at_small_hbar(grid):
    spec = CarnotSpec.harmonic(2.0, 1.0, 2.0, 1.0, hbar=0.2)
    exact = carnot_work_exact(spec, Grid1D(-12.0, 12.0, 2001), "sinc_dvr")
    # (T_h - T_l)[S(0.1) - S(0.2)] with S the oscillator entropy at x = beta hbar omega
    reference = float(harmonic_entropy(0.1) - harmonic_entropy(0.2))
    assert reference == pytest.approx(0.6918987413256769, abs=1e-13)
    assert exact == pytest.approx(reference, abs=1e-6)
    series = carnot_work_series(spec, grid).evaluate(0.2)
    assert abs(exact - series) <= 1e-5
