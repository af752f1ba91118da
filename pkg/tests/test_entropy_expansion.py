import math

import numpy as np
import pytest
from scipy.special import gamma

from semiclassical_entropy import (Grid2D, PotentialSpec, ThermalSpec, aw_terms, custom_series,
                                   entropy_series, entropy_series_via_fw, fw_terms, suggest_grid,
                                   thermal_wigner_series, verify_star_identity)
from semiclassical_entropy import entropy_expansion, verify
from semiclassical_entropy.errors import ConfigError
from semiclassical_entropy.phase_space import Field2D, partial_derivative


def uniform_series(grid):
    area = (grid.x_max - grid.x_min + grid.dx) * (grid.p_max - grid.p_min + grid.dp)
    c0 = Field2D.constant(grid, 2 * math.pi * grid.hbar / area)
    zero = Field2D.constant(grid, 0.0)
    return custom_series(grid, c0, zero, zero), area


def test_uniform_state_entropy():
    g = Grid2D(-1.0, 1.0, 32, -2.0, 2.0, 32, 0.3)
    w, area = uniform_series(g)
    s = entropy_series(w)
    assert s.s0 == pytest.approx(math.log(area / (2 * math.pi * 0.3)), abs=1e-12)
    assert s.s1 == 0.0
    assert s.s2 == pytest.approx(0.0, abs=1e-12)


def test_thermal_s0_values(thermal_series):
    # S_cl = 1 - ln(beta hbar omega)
    assert entropy_series(thermal_series).s0 == pytest.approx(1.0, abs=1e-6)
    th = ThermalSpec(1.0, PotentialSpec.harmonic(2.0))
    s = entropy_series(thermal_wigner_series(th, suggest_grid(th, 1.0, 512)))
    assert s.s0 == pytest.approx(1.0 - math.log(2.0), abs=1e-6)


def test_thermal_s2_harmonic(thermal_series):
    s = entropy_series(thermal_series)
    assert s.s1 == 0.0
    assert s.s2 == pytest.approx(1.0 / 24.0, abs=1e-6)


def test_quartic_s0_against_gamma_function(quartic):
    s = entropy_series(thermal_wigner_series(quartic, suggest_grid(quartic, 1.0, 512)))
    # <eps> = 1/2 + 1/4, Z_cl = Gamma(1/4) / (2 sqrt(pi))
    expected = 0.75 + math.log(gamma(0.25) / (2 * math.sqrt(math.pi)))
    assert s.s0 == pytest.approx(expected, abs=1e-6)


def test_s1_of_derivative_correction_vanishes(harmonic, grid512, thermal_series):
    c0 = thermal_series.c0
    w = custom_series(grid512, c0, partial_derivative(c0, "x", 1), thermal_series.c2)
    assert abs(entropy_series(w).s1) <= 1e-8


def test_aw_fw_at_a_zero(thermal_series):
    w, b = thermal_series, 0.37
    alphas = aw_terms(w, 0.0, b)
    for alpha, c in zip(alphas, w.coefficients()):
        np.testing.assert_allclose(alpha.values, c.values / b, rtol=1e-15, atol=0)
    phi0, phi1, phi2 = fw_terms(w, 0.0, b)
    assert np.all(phi0.values == math.log(b))
    assert np.all(phi1.values == 0.0) and np.all(phi2.values == 0.0)


@pytest.mark.parametrize("a,b", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
def test_ab_preconditions(thermal_series256, a, b):
    if a == 0.0:
        aw_terms(thermal_series256, a, b)
        return
    with pytest.raises(ConfigError):
        aw_terms(thermal_series256, a, b)
    with pytest.raises(ConfigError):
        fw_terms(thermal_series256, a, b)


def test_fw_derivative_in_a_is_aw(thermal_series256):
    w, d = thermal_series256, 1e-4
    for a in (0.5, 1.0, 2.0):
        plus, minus = fw_terms(w, a + d, 0.3), fw_terms(w, a - d, 0.3)
        for fp, fm, al in zip(plus, minus, aw_terms(w, a, 0.3)):
            scale = max(1.0, al.max_abs())
            assert np.max(np.abs((fp.values - fm.values) / (2 * d) - al.values)) <= 1e-6 * scale


def test_star_identity_trivial_cases(thermal_series256):
    assert max(verify_star_identity(thermal_series256, 0.0, 0.7)) <= 1e-13
    w, _ = uniform_series(Grid2D(-1.0, 1.0, 32, -1.0, 1.0, 32, 1.0))
    assert max(verify_star_identity(w, 1.0, 1.0)) <= 1e-13


def test_star_identity_thermal(thermal_series, thermal_series256):
    fine = verify_star_identity(thermal_series, 1.0, 1.0)
    coarse = verify_star_identity(thermal_series256, 1.0, 1.0)
    assert max(fine) <= 1e-5
    for c, f in zip(coarse[1:], fine[1:]):
        assert c / f >= 4.0


def test_routes_agree_harmonic(thermal_series):
    a = entropy_series(thermal_series).as_tuple()
    b = entropy_series_via_fw(thermal_series).as_tuple()
    assert max(abs(u - v) for u, v in zip(a, b)) <= 1e-3


def test_routes_agree_quartic(quartic):
    w = thermal_wigner_series(quartic, suggest_grid(quartic, 1.0, 256))
    a = entropy_series(w).as_tuple()
    b = entropy_series_via_fw(w).as_tuple()
    assert max(abs(u - v) for u, v in zip(a, b)) <= 1e-3


def test_fw_b_values_validated(thermal_series256):
    for bad in [(1e-3, 1e-5), (1e-3, 1e-3, 1e-5), (1e-3, -1e-5, 1e-7)]:
        with pytest.raises(ConfigError):
            entropy_series_via_fw(thermal_series256, bad)


def test_clamp_threshold_does_not_matter(thermal_series):
    a = entropy_series(thermal_series, tau=1e-12).as_tuple()
    b = entropy_series(thermal_series, tau=1e-15).as_tuple()
    assert max(abs(u - v) for u, v in zip(a, b)) <= 1e-8


def test_series_is_deterministic(thermal_series):
    assert entropy_series(thermal_series) == entropy_series(thermal_series)


def test_zero_c1_gives_exact_zero(thermal_series):
    assert entropy_series(thermal_series).s1 == 0.0


@pytest.mark.parametrize("name,value", [("_G_WEIGHT", -1.0 / 12.0), ("_B_WEIGHT", -1.0 / 16.0),
                                        ("_G_WEIGHT", 1.0 / 8.0)])
def test_wrong_weight_is_caught(monkeypatch, name, value):
    assert verify.check_route_thermal(256)[0]
    monkeypatch.setattr(entropy_expansion, name, value)
    assert not verify.check_route_thermal(256)[0]
