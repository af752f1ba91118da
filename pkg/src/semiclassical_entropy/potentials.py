"""One-dimensional potentials and canonical-ensemble parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConfigError
from .phase_space import Grid2D, fd_weights

KINDS = ("harmonic", "quartic", "tabulated")


def _nonuniform_derivative(x, u, order):
    """4th-order finite-difference derivative on (possibly non-uniform) samples."""
    n = len(x)
    width = 5 if order == 1 else 6
    out = np.empty(n)
    for i in range(n):
        lo = min(max(i - 2, 0), n - width)
        idx = np.arange(lo, lo + width)
        # scale offsets by a local spacing to keep the moment matrix well conditioned
        h = (x[idx[-1]] - x[idx[0]]) / (width - 1)
        w = fd_weights((x[idx] - x[i]) / h, order)
        out[i] = np.dot(w, u[idx]) / h**order
    return out


@dataclass(frozen=True)
class PotentialSpec:
    """External potential ``U(x)`` with analytic or tabulated derivatives.

    ``harmonic``: ``U = m omega^2 x^2 / 2``. ``quartic``: ``U = g x^4 / 4``.
    ``tabulated``: cubic-spline interpolation of samples; the sampled interval is
    a hard-walled box (``U = +inf`` outside).
    """

    kind: str
    mass: float = 1.0
    omega: float | None = None
    g: float | None = None
    table_x: tuple = field(default=(), repr=False)
    table_u: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError("potentials.kind", f"unknown potential kind {self.kind!r}")
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise ConfigError("potentials.mass", "mass must be positive")
        if self.kind == "harmonic" and not (self.omega is not None and self.omega > 0):
            raise ConfigError("potentials.omega", "omega must be positive")
        if self.kind == "quartic" and not (self.g is not None and self.g > 0):
            raise ConfigError("potentials.g", "g must be positive")
        if self.kind == "tabulated":
            xs = np.asarray(self.table_x, dtype=float)
            us = np.asarray(self.table_u, dtype=float)
            if xs.ndim != 1 or xs.shape != us.shape or xs.size < 6:
                raise ConfigError("potentials.table", "need >= 6 matching samples")
            if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(us))):
                raise ConfigError("potentials.table", "non-finite samples")
            if np.any(np.diff(xs) <= 0):
                raise ConfigError("potentials.table", "abscissae must be strictly increasing")
            object.__setattr__(self, "table_x", tuple(xs))
            object.__setattr__(self, "table_u", tuple(us))
            d1 = _nonuniform_derivative(xs, us, 1)
            d2 = _nonuniform_derivative(xs, us, 2)
            object.__setattr__(self, "_splines", (CubicSpline(xs, us),
                                                  CubicSpline(xs, d1),
                                                  CubicSpline(xs, d2)))

    @classmethod
    def harmonic(cls, omega, mass=1.0):
        return cls("harmonic", mass=mass, omega=omega)

    @classmethod
    def quartic(cls, g, mass=1.0):
        return cls("quartic", mass=mass, g=g)

    @classmethod
    def tabulated(cls, xs, us, mass=1.0):
        return cls("tabulated", mass=mass, table_x=tuple(xs), table_u=tuple(us))

    @property
    def confined(self):
        """True when the potential carries its own hard walls."""
        return self.kind == "tabulated"

    @property
    def domain(self):
        if self.kind == "tabulated":
            return self.table_x[0], self.table_x[-1]
        return -math.inf, math.inf

    def _table(self, x, which):
        x = np.asarray(x, dtype=float)
        lo, hi = self.domain
        tol = 1e-9 * (hi - lo)
        if np.any(x < lo - tol) or np.any(x > hi + tol):
            raise ConfigError("potentials.domain", "evaluation outside tabulated interval")
        return self._splines[which](np.clip(x, lo, hi))

    def U(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "harmonic":
            return 0.5 * self.mass * self.omega**2 * x**2
        if self.kind == "quartic":
            return 0.25 * self.g * x**4
        return self._table(x, 0)

    def dU(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "harmonic":
            return self.mass * self.omega**2 * x
        if self.kind == "quartic":
            return self.g * x**3
        return self._table(x, 1)

    def d2U(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "harmonic":
            return np.full_like(x, self.mass * self.omega**2)
        if self.kind == "quartic":
            return 3.0 * self.g * x**2
        return self._table(x, 2)

    def with_control(self, value):
        """Copy with the control parameter (omega or g) replaced."""
        if self.kind == "harmonic":
            return PotentialSpec.harmonic(value, self.mass)
        if self.kind == "quartic":
            return PotentialSpec.quartic(value, self.mass)
        raise ConfigError("potentials.control", "tabulated potentials have no control parameter")


@dataclass(frozen=True)
class ThermalSpec:
    beta: float
    potential: PotentialSpec

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ConfigError("potentials.beta", "beta must be positive")


def turning_point(potential, level, start=1.0):
    """Smallest ``x > 0`` with ``U(x) >= level`` and ``U(-x) >= level`` (bisection)."""
    if potential.confined:
        lo, hi = potential.domain
        return max(abs(lo), abs(hi))

    def below(x):
        return potential.U(x) < level or potential.U(-x) < level

    hi = start
    while below(hi):
        hi *= 2.0
    lo = 0.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if below(mid):
            lo = mid
        else:
            hi = mid
    return hi


def suggest_grid(thermal, hbar=1.0, n=512, margin=40.0, shift=(0.0, 0.0)):
    """Grid with ``beta U(x_edge) >= margin`` and ``beta p_edge^2 / 2m >= margin``.

    ``shift`` widens the box on one side to hold a displaced copy of the state.
    """
    pot = thermal.potential
    p_half = math.sqrt(2.0 * pot.mass * margin / thermal.beta)
    x0, p0 = shift
    if pot.confined:
        lo, hi = pot.domain
        return Grid2D(lo, hi, n, -p_half + min(p0, 0), p_half + max(p0, 0), n, hbar)
    x_half = turning_point(pot, margin / thermal.beta)
    return Grid2D(-x_half + min(x0, 0), x_half + max(x0, 0), n,
                  -p_half + min(p0, 0), p_half + max(p0, 0), n, hbar)
