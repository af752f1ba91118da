"""Net work of an ideal quantum Carnot cycle and its hbar-expansion.

Only the two ends of the hot isotherm enter: ``W = (T_h - T_l)[S(B) - S(A)]``
with both entropies taken at ``beta_h = 1 / T_h``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError
from .oracle import diagonalize, thermal_entropy_exact
from .potentials import PotentialSpec, ThermalSpec
from .thermal import s_thermal_series


@dataclass(frozen=True)
class CarnotSpec:
    t_hot: float
    t_cold: float
    substance_a: PotentialSpec
    substance_b: PotentialSpec
    hbar: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.t_hot) and math.isfinite(self.t_cold)):
            raise ConfigError("carnot.temperatures", "non-finite temperature")
        if not self.t_hot > self.t_cold > 0:
            raise ConfigError("carnot.temperatures", "need t_hot > t_cold > 0")
        a, b = self.substance_a, self.substance_b
        if a.kind != b.kind or a.mass != b.mass:
            raise ConfigError("carnot.substances", "substances must share kind and mass")
        if not self.hbar > 0:
            raise ConfigError("carnot.hbar", "hbar must be positive")

    @classmethod
    def harmonic(cls, t_hot, t_cold, lambda_a, lambda_b, mass=1.0, hbar=1.0):
        return cls(t_hot, t_cold, PotentialSpec.harmonic(lambda_a, mass),
                   PotentialSpec.harmonic(lambda_b, mass), hbar)

    @property
    def beta_hot(self):
        return 1.0 / self.t_hot

    def swapped(self):
        return CarnotSpec(self.t_hot, self.t_cold, self.substance_b, self.substance_a, self.hbar)


@dataclass(frozen=True)
class WorkSeries:
    w0: float
    w1: float
    w2: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.w0, self.w1, self.w2)):
            raise ConfigError("carnot.finite", "non-finite work coefficient")

    def evaluate(self, hbar):
        return self.w0 + self.w1 * hbar + self.w2 * hbar**2


def carnot_work_series(spec, grid):
    """Order-by-order work from the thermal entropy series of both substances.

    The first-order coefficient is identically zero for thermal states.
    """
    beta = spec.beta_hot
    sa = s_thermal_series(ThermalSpec(beta, spec.substance_a), grid)
    sb = s_thermal_series(ThermalSpec(beta, spec.substance_b), grid)
    dt = spec.t_hot - spec.t_cold
    return WorkSeries(dt * (sb.s0 - sa.s0), 0.0, dt * (sb.s2 - sa.s2))


def harmonic_carnot_w2(t_hot, t_cold, lambda_a, lambda_b):
    """Closed-form ``hbar^2`` coefficient for a harmonic working substance.

    ``w2 = -(T_h - T_l) beta_h^2 (lambda_A^2 - lambda_B^2) / 24``.
    """
    if not t_hot >= t_cold > 0:
        raise ConfigError("carnot.temperatures", "need t_hot >= t_cold > 0")
    beta = 1.0 / t_hot
    return -(t_hot - t_cold) * beta**2 / 24.0 * (lambda_a**2 - lambda_b**2)


def carnot_work_exact(spec, grid1d, method="fd5"):
    """Work from exact von Neumann entropies obtained by diagonalization."""
    beta = spec.beta_hot
    entropies = []
    for pot in (spec.substance_a, spec.substance_b):
        sd = diagonalize(pot, grid1d, spec.hbar, method)
        entropies.append(thermal_entropy_exact(sd, beta))
    return (spec.t_hot - spec.t_cold) * (entropies[1] - entropies[0])
