"""hbar-expansions of Wigner functions for states with a classical limit.

A :class:`WignerSeries` stores ``W = c0 + hbar c1 + hbar^2 c2`` with real
coefficient fields. In terms of an expansion in powers of ``(i hbar)`` with
coefficients ``W0, W1, W2`` this is ``c0 = W0``, ``c1 = i W1``, ``c2 = -W2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import ConfigError, CoverageError
from .phase_space import Field2D, Grid2D, integrate, integrate_array
from .potentials import PotentialSpec, ThermalSpec, suggest_grid  # noqa: F401  (re-export)

BOUNDARY_RATIO = 1e-12
NORM_TOL = 1e-6
NEGATIVITY_TOL = 1e-12
MASS_LOSS_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class WignerSeries:
    grid: Grid2D
    c0: Field2D
    c1: Field2D
    c2: Field2D

    def coefficients(self):
        return (self.c0, self.c1, self.c2)

    def evaluate(self, hbar):
        return self.c0 + hbar * self.c1 + hbar**2 * self.c2


def _boundary_max(values):
    return max(np.max(np.abs(values[0])), np.max(np.abs(values[-1])),
               np.max(np.abs(values[:, 0])), np.max(np.abs(values[:, -1])))


def check_coverage(values, check="wigner_states.coverage", skip_x=False):
    """Raise :class:`CoverageError` unless the edge density is tiny relative to the peak."""
    peak = np.max(np.abs(values))
    if skip_x:
        edge = max(np.max(np.abs(values[:, 0])), np.max(np.abs(values[:, -1])))
    else:
        edge = _boundary_max(values)
    if not peak > 0 or edge > BOUNDARY_RATIO * peak:
        raise CoverageError(check, f"edge/peak = {edge / peak if peak else np.inf:.3g}")


def _walls_on_grid_edges(potential, grid):
    if not potential.confined:
        return False
    lo, hi = potential.domain
    tol = 1e-9 * (hi - lo)
    return abs(grid.x_min - lo) <= tol and abs(grid.x_max - hi) <= tol


def classical_hamiltonian_field(thermal, grid):
    """``eps(x, p) = p^2 / 2m + U(x)`` on the grid."""
    pot = thermal.potential
    x, p = grid.x, grid.p
    eps = pot.U(x)[:, None] + (p**2 / (2.0 * pot.mass))[None, :]
    return Field2D(grid, eps)


def _boltzmann_unnormalized(thermal, grid):
    """``exp(-beta (eps - eps_min))`` and the offset ``eps_min``."""
    eps = classical_hamiltonian_field(thermal, grid).values
    e_min = float(np.min(eps))
    rho = np.exp(-thermal.beta * (eps - e_min))
    check_coverage(rho, skip_x=_walls_on_grid_edges(thermal.potential, grid))
    return rho, e_min


def classical_boltzmann(thermal, grid):
    """Canonical density ``exp(-beta eps) / Z_cl``, normalized on this grid's quadrature."""
    rho, _ = _boltzmann_unnormalized(thermal, grid)
    return Field2D(grid, rho / integrate_array(rho, grid))


def eta_field(thermal, grid):
    """Second-order Wigner-Kirkwood correction ``eta(beta, x, p)``.

    ``eta = beta^2/(8m) [U'' - (beta/3) U'^2 - beta p^2 U'' / (3m)]``.
    """
    pot = thermal.potential
    beta, m = thermal.beta, pot.mass
    x, p = grid.x, grid.p
    u1 = pot.dU(x)[:, None]
    u2 = pot.d2U(x)[:, None]
    p2 = (p**2)[None, :]
    eta = beta**2 / (8.0 * m) * (u2 - beta / 3.0 * u1**2 - beta / (3.0 * m) * p2 * u2)
    return Field2D(grid, np.broadcast_to(eta, grid.shape))


def thermal_wigner_series(thermal, grid):
    """Wigner-Kirkwood series of the canonical state.

    ``c0`` is the classical Boltzmann density, ``c1 = 0`` and
    ``c2 = -c0 (eta - <eta>)`` with ``<eta>`` the classical canonical average.
    """
    c0 = classical_boltzmann(thermal, grid)
    eta = eta_field(thermal, grid).values
    mean_eta = integrate_array(eta * c0.values, grid)
    c2 = Field2D(grid, -c0.values * (eta - mean_eta))
    return WignerSeries(grid, c0, Field2D(grid, np.zeros(grid.shape)), c2)


def _shift_array(values, sx, sp):
    """``out[i, j] = values[i - sx, j - sp]`` with zero fill outside.

    Integer shifts are exact index moves; fractional ones use cubic B-spline
    interpolation.
    """
    if float(sx).is_integer() and float(sp).is_integer():
        sx, sp = int(sx), int(sp)
        out = np.zeros_like(values)
        nx, n_p = values.shape
        src_x = slice(max(0, -sx), min(nx, nx - sx))
        dst_x = slice(max(0, sx), min(nx, nx + sx))
        src_p = slice(max(0, -sp), min(n_p, n_p - sp))
        dst_p = slice(max(0, sp), min(n_p, n_p + sp))
        if src_x.start < src_x.stop and src_p.start < src_p.stop:
            out[dst_x, dst_p] = values[src_x, src_p]
        return out
    return ndimage.shift(values, (sx, sp), order=3, mode="constant", cval=0.0)


def _grid_steps(value, step):
    s = value / step
    r = round(s)
    # snap shifts within roundoff of a node to an exact index move
    return float(r) if abs(s - r) < 1e-9 else s


def displaced_mixture_series(base, x0, p0):
    """Equal mixture of ``base`` and its phase-space translate by ``(x0, p0)``.

    Every coefficient maps ``c -> c(x, p)/2 + c(x - x0, p - p0)/2``.
    """
    grid = base.grid
    sx = _grid_steps(x0, grid.dx)
    sp = _grid_steps(p0, grid.dp)
    shifted = [_shift_array(c.values, sx, sp) for c in base.coefficients()]
    lost = integrate(base.c0) - integrate_array(shifted[0], grid)
    if abs(lost) > MASS_LOSS_TOL:
        raise CoverageError("wigner_states.shift_coverage", f"mass lost by shift: {lost:.3g}")
    check_coverage(shifted[0], "wigner_states.shift_coverage")
    mixed = [Field2D(grid, 0.5 * c.values + 0.5 * s)
             for c, s in zip(base.coefficients(), shifted)]
    return WignerSeries(grid, *mixed)


def custom_series(grid, c0, c1, c2):
    """Validate user-supplied coefficient fields (arrays or :class:`Field2D`)."""
    fields = []
    for c in (c0, c1, c2):
        if isinstance(c, Field2D):
            if c.grid != grid:
                raise ConfigError("wigner_states.grid_mismatch", "coefficient on another grid")
            fields.append(c)
        else:
            fields.append(Field2D(grid, c))
    f0, f1, f2 = fields
    if np.min(f0.values) < -NEGATIVITY_TOL:
        raise ConfigError("wigner_states.negative_c0", "c0 must be a probability density")
    norm = integrate(f0)
    if abs(norm - 1.0) > NORM_TOL:
        raise ConfigError("wigner_states.normalization", f"integral of c0 is {norm!r}")
    for k, f in ((1, f1), (2, f2)):
        if abs(integrate(f)) > NORM_TOL:
            raise ConfigError("wigner_states.normalization", f"integral of c{k} is nonzero")
    return WignerSeries(grid, f0, f1, f2)
