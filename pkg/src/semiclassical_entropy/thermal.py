"""Closed-form canonical-ensemble quantities on a phase-space grid.

The classical partition function is ``Z_cl = int exp(-beta eps) dx dp/(2 pi hbar)``
(the same measure as every other phase-space integral here).
"""

from __future__ import annotations

import math

import numpy as np

from .entropy_expansion import EntropySeries
from .errors import ConfigError
from .phase_space import integrate_array
from .wigner_states import (_boltzmann_unnormalized, classical_boltzmann,
                            classical_hamiltonian_field, eta_field)


def z_classical(thermal, grid):
    rho, e_min = _boltzmann_unnormalized(thermal, grid)
    return integrate_array(rho, grid) * math.exp(-thermal.beta * e_min)


def log_z_classical(thermal, grid):
    rho, e_min = _boltzmann_unnormalized(thermal, grid)
    return math.log(integrate_array(rho, grid)) - thermal.beta * e_min


def canonical_expectation(f, thermal, grid):
    """Classical canonical average ``<f>_eq`` of a field."""
    if f.grid != grid:
        raise ConfigError("thermal_closed_form.grid_mismatch", "field lives on another grid")
    c0 = classical_boltzmann(thermal, grid)
    return integrate_array(f.values * c0.values, grid)


def _moments(thermal, grid):
    c0 = classical_boltzmann(thermal, grid).values
    eps = classical_hamiltonian_field(thermal, grid).values
    eta = eta_field(thermal, grid).values
    mean = lambda v: integrate_array(v * c0, grid)  # noqa: E731
    return mean(eps), mean(eta), mean(eps * eta)


def s_classical(thermal, grid):
    """``S_cl = beta <eps> + ln Z_cl``."""
    c0 = classical_boltzmann(thermal, grid)
    eps = classical_hamiltonian_field(thermal, grid)
    return thermal.beta * integrate_array(eps.values * c0.values, grid) + log_z_classical(thermal, grid)


def zq_expansion(thermal, grid):
    """Return ``(Z_cl, zeta2)`` with ``ln Z_q = ln Z_cl - hbar^2 zeta2 + o(hbar^2)``."""
    c0 = classical_boltzmann(thermal, grid)
    eta = eta_field(thermal, grid)
    return z_classical(thermal, grid), integrate_array(eta.values * c0.values, grid)


def s_thermal_series(thermal, grid):
    """Entropy series of the canonical state from canonical averages.

    ``s2 = -[(1 - beta <eps>) <eta> + beta <eps eta>]``; ``s1`` vanishes identically.
    """
    beta = thermal.beta
    m_eps, m_eta, m_eps_eta = _moments(thermal, grid)
    s0 = beta * m_eps + log_z_classical(thermal, grid)
    s2 = -((1.0 - beta * m_eps) * m_eta + beta * m_eps_eta)
    return EntropySeries(s0, 0.0, float(s2))


def harmonic_entropy(x):
    """Exact entropy of a harmonic oscillator at ``x = beta hbar omega``."""
    x = np.asarray(x, dtype=float)
    return x / np.expm1(x) - np.log(-np.expm1(-x))


def harmonic_log_z(x):
    """Exact ``ln Z_q = -ln(2 sinh(x/2))`` of a harmonic oscillator."""
    x = np.asarray(x, dtype=float)
    return -x / 2.0 - np.log(-np.expm1(-x))
