"""Exact quantum reference by diagonalizing the 1D Hamiltonian on a grid.

Density matrices are stored dx-weighted, ``M[i, j] = rho(x_i, x_j) dx``, so
that ``trace(M) = 1`` and the eigenvalues of ``M`` are those of the operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, ndimage
from scipy.interpolate import CubicSpline

from .errors import ConfigError, ConvergenceError, LeakageError
from .phase_space import Field2D, pairwise_sum

METHODS = ("fd5", "sinc_dvr")
LEAK_TOL = 1e-8
LEAK_STATES = 40
TAIL_TOL = 1e-14
WEIGHT_CUTOFF = 1e-10
EIG_FLOOR = 1e-14


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if self.n < 64:
            raise ConfigError("exact_oracle.grid", "need at least 64 nodes")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max) and self.x_max > self.x_min):
            raise ConfigError("exact_oracle.grid", "empty or non-finite range")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def x(self):
        return self.x_min + np.arange(self.n) * self.dx


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenpairs; ``states[:, k]`` is normalized with ``sum |psi|^2 dx = 1``."""

    grid: Grid1D
    energies: np.ndarray
    states: np.ndarray
    hbar: float
    method: str
    confined: bool = False

    def unit_vectors(self):
        return self.states * math.sqrt(self.grid.dx)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    grid: Grid1D
    matrix: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.matrix)
        n = self.grid.n
        if M.shape != (n, n):
            raise ConfigError("exact_oracle.density_matrix", "shape does not match grid")
        if np.max(np.abs(M - M.conj().T)) > 1e-12:
            raise ConfigError("exact_oracle.density_matrix", "not Hermitian")
        if abs(np.trace(M).real - 1.0) > 1e-10:
            raise ConfigError("exact_oracle.density_matrix", "trace is not 1")

    def eigenvalues(self):
        lam = linalg.eigvalsh(self.matrix)
        if lam[0] < -1e-10:
            raise ConfigError("exact_oracle.density_matrix", f"negative eigenvalue {lam[0]:.3g}")
        return lam

    def purity(self):
        return float(np.real(np.sum(self.matrix * self.matrix.T)))

    def position_density(self):
        """``rho(x, x)`` (per unit length)."""
        return np.real(np.diag(self.matrix)) / self.grid.dx

    def expect_x(self):
        return float(np.sum(self.grid.x * np.real(np.diag(self.matrix))))


# ---------------------------------------------------------------------------
# Hamiltonian


def _kinetic_fd5(n, dx, hbar, mass):
    c = hbar**2 / (2.0 * mass * dx**2) / 12.0
    T = np.zeros((n, n))
    idx = np.arange(n)
    T[idx, idx] = 30.0 * c
    T[idx[:-1], idx[:-1] + 1] = T[idx[:-1] + 1, idx[:-1]] = -16.0 * c
    T[idx[:-2], idx[:-2] + 2] = T[idx[:-2] + 2, idx[:-2]] = 1.0 * c
    # odd reflection about the walls one node beyond each end: psi_{-2} = -psi_0
    T[0, 0] -= c
    T[-1, -1] -= c
    return T


def _kinetic_sinc(n, dx, hbar, mass):
    c = hbar**2 / (2.0 * mass * dx**2)
    k = np.arange(n)
    diff = k[:, None] - k[None, :]
    with np.errstate(divide="ignore"):
        T = c * 2.0 * (-1.0) ** np.abs(diff) / diff.astype(float) ** 2
    T[k, k] = c * math.pi**2 / 3.0
    return T


def diagonalize(potential, grid1d, hbar, method="fd5", check_leakage=True):
    """Full eigendecomposition of ``p^2/2m + U(x)`` on ``grid1d``.

    ``fd5`` uses the 5-point second-difference stencil with hard walls one
    spacing outside the grid; ``sinc_dvr`` is the Colbert-Miller sinc basis.
    """
    if method not in METHODS:
        raise ConfigError("exact_oracle.method", f"unknown method {method!r}")
    if not (math.isfinite(hbar) and hbar > 0):
        raise ConfigError("exact_oracle.hbar", "hbar must be positive")
    n, dx = grid1d.n, grid1d.dx
    kin = _kinetic_fd5 if method == "fd5" else _kinetic_sinc
    H = kin(n, dx, hbar, potential.mass)
    H[np.arange(n), np.arange(n)] += potential.U(grid1d.x)
    try:
        E, V = linalg.eigh(H)
    except linalg.LinAlgError as exc:
        raise ConvergenceError("exact_oracle.eigensolver", str(exc)) from exc
    spec = SpectralDecomposition(grid1d, E, V / math.sqrt(dx), hbar, method,
                                 confined=potential.confined)
    if check_leakage:
        _check_leakage(spec, range(min(LEAK_STATES, n)))
    return spec


def boundary_amplitude(spec, k):
    """Largest cell amplitude ``|psi| sqrt(dx)`` on the two outermost nodes per side."""
    v = spec.states[:, k] * math.sqrt(spec.grid.dx)
    return float(max(np.max(np.abs(v[:2])), np.max(np.abs(v[-2:]))))


def _check_leakage(spec, indices):
    if spec.confined:
        return
    for k in indices:
        amp = boundary_amplitude(spec, k)
        if amp > LEAK_TOL:
            raise LeakageError("exact_oracle.leakage", f"state {k} has edge amplitude {amp:.3g}")


def _thermal_weights(spec, beta):
    if not (math.isfinite(beta) and beta > 0):
        raise ConfigError("exact_oracle.beta", "beta must be positive")
    E = spec.energies
    w = np.exp(-beta * (E - E[0]))
    if w[-1] > TAIL_TOL * np.sum(w):
        raise ConvergenceError("exact_oracle.spectral_tail", "beta E_max too small")
    z_shifted = pairwise_sum(w)
    _check_leakage(spec, np.flatnonzero(w / z_shifted > WEIGHT_CUTOFF))
    return w, z_shifted


def z_quantum(spec, beta):
    """``Z_q = sum_n exp(-beta E_n)``."""
    w, z = _thermal_weights(spec, beta)
    return z * math.exp(-beta * spec.energies[0])


def log_z_quantum(spec, beta):
    w, z = _thermal_weights(spec, beta)
    return math.log(z) - beta * spec.energies[0]


def thermal_entropy_exact(spec, beta):
    """``S = beta <H> + ln Z`` from the spectrum."""
    w, z = _thermal_weights(spec, beta)
    E = spec.energies
    mean_shift = pairwise_sum(w * (E - E[0])) / z
    return beta * mean_shift + math.log(z)


def thermal_density_matrix(spec, beta):
    w, z = _thermal_weights(spec, beta)
    U = spec.unit_vectors()
    M = (U * (w / z)) @ U.T
    M = 0.5 * (M + M.T)
    return DensityMatrix(spec.grid, M)


def von_neumann_entropy(rho):
    """``-sum lambda ln lambda`` over the spectrum, dropping ``lambda <= 1e-14``."""
    lam = rho.eigenvalues()
    lam = lam[lam > EIG_FLOOR]
    return float(-pairwise_sum(lam * np.log(lam)))


def _shift_matrix(M, s):
    if float(s).is_integer():
        s = int(s)
        out = np.zeros_like(M)
        n = M.shape[0]
        src = slice(max(0, -s), min(n, n - s))
        dst = slice(max(0, s), min(n, n + s))
        out[dst, dst] = M[src, src]
        return out
    if np.iscomplexobj(M):
        return _shift_matrix(M.real, s) + 1j * _shift_matrix(M.imag, s)
    return ndimage.shift(M, (s, s), order=3, mode="constant", cval=0.0)


def displace(rho, x0, p0, hbar):
    """Phase-space translation: ``rho'(x, x') = exp(i p0 (x - x')/hbar) rho(x - x0, x' - x0)``."""
    g = rho.grid
    s = x0 / g.dx
    r = round(s)
    s = float(r) if abs(s - r) < 1e-9 else s
    M = _shift_matrix(np.asarray(rho.matrix), s)
    lost = 1.0 - np.trace(M).real
    if abs(lost) > 1e-9:
        raise LeakageError("exact_oracle.displace_leakage", f"trace lost by shift: {lost:.3g}")
    if p0 != 0.0:
        phase = np.exp(1j * p0 * g.x / hbar)
        M = phase[:, None] * M * phase.conj()[None, :]
    M = 0.5 * (M + M.conj().T)
    M = M / np.trace(M).real
    return DensityMatrix(g, M)


def mix(rho1, rho2, w1):
    if rho1.grid != rho2.grid:
        raise ConfigError("exact_oracle.grid_mismatch", "density matrices on different grids")
    if not 0.0 <= w1 <= 1.0:
        raise ConfigError("exact_oracle.weight", "weight must lie in [0, 1]")
    if w1 == 1.0:
        return rho1
    return DensityMatrix(rho1.grid, w1 * rho1.matrix + (1.0 - w1) * rho2.matrix)


def wigner_transform(rho, grid):
    """Wigner function ``W(x, p) = int dy <x - y/2| rho |x + y/2> exp(i p y / hbar)``.

    Evaluated on the 1D nodes with ``y = 2 k dx`` and cubic-spline
    interpolated in ``x`` onto the phase-space grid. ``grid.hbar`` sets both
    the phase and the measure, so ``integrate(W) = 1``.
    """
    g1 = rho.grid
    dx = g1.dx
    if grid.x_min < g1.x_min - 1e-12 or grid.x_max > g1.x_max + 1e-12:
        raise ConfigError("exact_oracle.range", "phase-space x-range exceeds the 1D grid")
    x1 = g1.x
    n = g1.n
    lo = max(0, int(np.searchsorted(x1, grid.x_min)) - 3)
    hi = min(n, int(np.searchsorted(x1, grid.x_max)) + 4)
    rows = np.arange(lo, hi)
    kmax = n // 2
    k = np.arange(kmax + 1)
    a = rows[:, None] - k[None, :]
    b = rows[:, None] + k[None, :]
    valid = (a >= 0) & (b < n)
    M = np.asarray(rho.matrix)
    R = np.where(valid, M[np.clip(a, 0, n - 1), np.clip(b, 0, n - 1)], 0.0)
    theta = 2.0 * dx * np.outer(k, grid.p) / grid.hbar
    # Hermiticity pairs +k and -k: W = 2 [R_0 + 2 Re sum_{k>0} R_k e^{i theta_k}]
    weights = np.full(kmax + 1, 2.0)
    weights[0] = 1.0
    Rw = R * weights
    W = Rw.real @ np.cos(theta)
    if np.iscomplexobj(R):
        W -= Rw.imag @ np.sin(theta)
    W *= 2.0
    if len(rows) == len(grid.x) and np.allclose(x1[rows], grid.x, rtol=0, atol=1e-12):
        vals = W
    else:
        vals = CubicSpline(x1[rows], W, axis=0)(grid.x)
    return Field2D(grid, vals)
