import math

import numpy as np
import pytest

from semiclassical_entropy import (DensityMatrix, Grid1D, Grid2D, PotentialSpec, diagonalize,
                                   displace, integrate, log_z_quantum, mix,
                                   thermal_density_matrix, thermal_entropy_exact,
                                   von_neumann_entropy, wigner_transform, z_quantum)
from semiclassical_entropy.errors import ConfigError, ConvergenceError, LeakageError

Z_HO = 1.0 / (2.0 * math.sinh(0.5))  # hbar omega beta = 1
S_HO = 1.040651852256408


def test_grid1d_validation():
    with pytest.raises(ConfigError):
        Grid1D(-1.0, 1.0, 32)
    with pytest.raises(ConfigError):
        Grid1D(1.0, -1.0, 128)


def test_unknown_method_and_bad_hbar():
    pot = PotentialSpec.harmonic(1.0)
    with pytest.raises(ConfigError):
        diagonalize(pot, Grid1D(-8, 8, 128), 1.0, "crank")
    with pytest.raises(ConfigError):
        diagonalize(pot, Grid1D(-8, 8, 128), 0.0)


def test_harmonic_levels(ho_spectrum):
    E = ho_spectrum.energies
    assert E[0] == pytest.approx(0.5, abs=1e-8)
    np.testing.assert_allclose(np.diff(E[:21]), 1.0, atol=1e-6)


def test_states_normalized(ho_spectrum):
    s = ho_spectrum
    norms = np.sum(s.states[:, :10] ** 2, axis=0) * s.grid.dx
    np.testing.assert_allclose(norms, 1.0, atol=1e-12)


@pytest.mark.parametrize("method", ["fd5", "sinc_dvr"])
def test_harmonic_z_and_entropy(method):
    sd = diagonalize(PotentialSpec.harmonic(1.0), Grid1D(-12.0, 12.0, 1201), 1.0, method)
    assert z_quantum(sd, 1.0) == pytest.approx(Z_HO, abs=1e-6)
    assert log_z_quantum(sd, 1.0) == pytest.approx(math.log(Z_HO), abs=1e-6)
    assert thermal_entropy_exact(sd, 1.0) == pytest.approx(S_HO, abs=1e-6)


def test_z_at_beta_two(ho_spectrum):
    assert z_quantum(ho_spectrum, 2.0) == pytest.approx(1.0 / (2.0 * math.sinh(1.0)), abs=1e-8)


def test_particle_in_box_levels():
    xs = np.linspace(0.0, 1.0, 11)
    pot = PotentialSpec.tabulated(xs, np.zeros_like(xs))
    g = Grid1D(0.0, 1.0, 401)
    sd = diagonalize(pot, g, 1.0)
    # walls sit one spacing beyond each end node
    L = (g.n + 1) * g.dx
    k = np.arange(1, 6)
    np.testing.assert_allclose(sd.energies[:5], (math.pi * k / L) ** 2 / 2, rtol=1e-6)


def test_leakage_detected():
    with pytest.raises(LeakageError) as err:
        diagonalize(PotentialSpec.harmonic(1.0), Grid1D(-3.0, 3.0, 200), 1.0)
    assert err.value.check == "exact_oracle.leakage"


def test_spectral_tail_detected():
    sd = diagonalize(PotentialSpec.harmonic(1.0), Grid1D(-12.0, 12.0, 101), 1.0,
                     check_leakage=False)
    with pytest.raises(ConvergenceError):
        z_quantum(sd, 1e-3)


def test_density_matrix_properties(ho_spectrum):
    rho = thermal_density_matrix(ho_spectrum, 1.0)
    M = rho.matrix
    assert np.trace(M) == pytest.approx(1.0, abs=1e-12)
    assert np.array_equal(M, M.T)
    assert rho.eigenvalues()[0] > -1e-12
    assert rho.expect_x() == pytest.approx(0.0, abs=1e-10)
    # <x^2> = coth(1/2) / 2
    x2 = float(np.sum(rho.grid.x**2 * np.diag(M)))
    assert x2 == pytest.approx(0.5 / math.tanh(0.5), abs=1e-6)
    assert von_neumann_entropy(rho) == pytest.approx(thermal_entropy_exact(ho_spectrum, 1.0),
                                                     abs=1e-8)


def test_density_matrix_validation():
    g = Grid1D(-1.0, 1.0, 64)
    with pytest.raises(ConfigError):
        DensityMatrix(g, np.eye(64))
    bad = np.zeros((64, 64))
    bad[0, 0], bad[0, 1] = 1.0, 0.1
    with pytest.raises(ConfigError):
        DensityMatrix(g, bad)
    neg = np.diag(np.r_[1.5, -0.5, np.zeros(62)])
    with pytest.raises(ConfigError):
        DensityMatrix(g, neg).eigenvalues()


def test_pure_state_and_equal_mixture():
    g = Grid1D(-1.0, 1.0, 64)
    e0, e1 = np.zeros((64, 64)), np.zeros((64, 64))
    e0[3, 3] = e1[40, 40] = 1.0
    pure = DensityMatrix(g, e0)
    assert von_neumann_entropy(pure) == 0.0
    assert pure.purity() == 1.0
    mixed = mix(pure, DensityMatrix(g, e1), 0.5)
    assert von_neumann_entropy(mixed) == pytest.approx(math.log(2), abs=1e-14)
    assert mixed.purity() == pytest.approx(0.5)
    with pytest.raises(ConfigError):
        mix(pure, pure, 1.5)


def test_displace_preserves_spectrum():
    sd = diagonalize(PotentialSpec.harmonic(1.0), Grid1D(-12.0, 12.0, 1601), 1.0)
    rho = thermal_density_matrix(sd, 1.0)
    s = von_neumann_entropy(rho)
    for x0, p0 in [(2.0, 0.0), (1.37, 0.0), (0.0, 0.8), (-1.1, 0.5)]:
        d = displace(rho, x0, p0, 1.0)
        assert von_neumann_entropy(d) == pytest.approx(s, abs=1e-8)
        assert d.expect_x() == pytest.approx(x0, abs=1e-6)


def test_displace_exact_shift_is_index_shift(ho_spectrum):
    rho = thermal_density_matrix(ho_spectrum, 1.0)
    k = 50
    d = displace(rho, k * ho_spectrum.grid.dx, 0.0, 1.0)
    np.testing.assert_allclose(d.matrix[k:, k:], rho.matrix[:-k, :-k], atol=1e-15)


def test_displace_out_of_box_rejected(ho_spectrum):
    rho = thermal_density_matrix(ho_spectrum, 1.0)
    with pytest.raises(LeakageError):
        displace(rho, 11.0, 0.0, 1.0)


def test_mixture_of_displaced_thermal_states(ho_spectrum):
    rho = thermal_density_matrix(ho_spectrum, 1.0)
    m = mix(rho, displace(rho, 2.0, 0.0, 1.0), 0.5)
    s = von_neumann_entropy(m)
    assert S_HO < s < S_HO + math.log(2)
    assert m.expect_x() == pytest.approx(1.0, abs=1e-6)


@pytest.fixture(scope="module")
def ground_wigner():
    sd = diagonalize(PotentialSpec.harmonic(1.0), Grid1D(-12.0, 12.0, 1201), 1.0)
    rho = thermal_density_matrix(sd, 40.0)  # effectively the ground state
    g = Grid2D(-6.0, 6.0, 241, -6.0, 6.0, 241, 1.0)
    return rho, wigner_transform(rho, g)


def test_ground_state_wigner(ground_wigner):
    _, W = ground_wigner
    g = W.grid
    X, P = g.mesh()
    # W = 2 exp(-x^2 - p^2) under dx dp / (2 pi hbar)
    np.testing.assert_allclose(W.values, 2.0 * np.exp(-X**2 - P**2), atol=1e-6)
    assert integrate(W) == pytest.approx(1.0, abs=1e-8)
    assert W.values.min() > -1e-8


def test_wigner_marginal_is_position_density(ground_wigner):
    rho, W = ground_wigner
    g = W.grid
    marginal = W.values.sum(axis=1) * g.dp / (2 * math.pi * g.hbar)
    np.testing.assert_allclose(marginal, np.exp(-g.x**2) / math.sqrt(math.pi), atol=1e-6)
    dens = rho.position_density()
    np.testing.assert_allclose(dens, np.exp(-rho.grid.x**2) / math.sqrt(math.pi), atol=1e-6)


def test_wigner_range_checked(ground_wigner):
    rho, _ = ground_wigner
    with pytest.raises(ConfigError):
        wigner_transform(rho, Grid2D(-13.0, 13.0, 64, -3.0, 3.0, 64, 1.0))
