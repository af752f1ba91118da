"""Uniform phase-space grids, finite-difference derivatives and quadrature.

Fields are real arrays of shape ``(nx, np)`` with ``x`` as the outer (row)
index. All integrals use the measure ``dx dp / (2 pi hbar)``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import ConfigError

MIN_NODES = 16


@dataclass(frozen=True)
class Grid2D:
    """Uniform lattice on ``[x_min, x_max] x [p_min, p_max]``.

    ``n_p`` is the number of momentum nodes (``np`` in serialized configs).
    """

    x_min: float
    x_max: float
    nx: int
    p_min: float
    p_max: float
    n_p: int
    hbar: float = 1.0

    def __post_init__(self):
        vals = (self.x_min, self.x_max, self.p_min, self.p_max, self.hbar)
        if not all(math.isfinite(v) for v in vals):
            raise ConfigError("phase_space.grid", "non-finite grid parameter")
        if self.nx < MIN_NODES or self.n_p < MIN_NODES:
            raise ConfigError("phase_space.grid", f"need at least {MIN_NODES} nodes per axis")
        if not (self.x_max > self.x_min and self.p_max > self.p_min):
            raise ConfigError("phase_space.grid", "empty range")
        if not self.hbar > 0:
            raise ConfigError("phase_space.grid", "hbar must be positive")

    @classmethod
    def symmetric(cls, x_half, p_half, n=512, hbar=1.0, x_center=0.0, p_center=0.0):
        return cls(x_center - x_half, x_center + x_half, n,
                   p_center - p_half, p_center + p_half, n, hbar)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dp(self):
        return (self.p_max - self.p_min) / (self.n_p - 1)

    @property
    def x(self):
        return self.x_min + np.arange(self.nx) * self.dx

    @property
    def p(self):
        return self.p_min + np.arange(self.n_p) * self.dp

    @property
    def shape(self):
        return (self.nx, self.n_p)

    @property
    def weight(self):
        """Quadrature weight of one node, ``dx dp / (2 pi hbar)``."""
        return self.dx * self.dp / (2.0 * math.pi * self.hbar)

    def mesh(self):
        """Return ``(X, P)`` coordinate arrays with ``indexing='ij'``."""
        return np.meshgrid(self.x, self.p, indexing="ij")

    def with_hbar(self, hbar):
        return Grid2D(self.x_min, self.x_max, self.nx, self.p_min, self.p_max, self.n_p, hbar)

    def refined(self, factor=2):
        """Same box with the spacing divided by ``factor``."""
        return Grid2D(self.x_min, self.x_max, factor * (self.nx - 1) + 1,
                      self.p_min, self.p_max, factor * (self.n_p - 1) + 1, self.hbar)


@dataclass(frozen=True, eq=False)
class Field2D:
    """Real scalar field sampled on a :class:`Grid2D`."""

    grid: Grid2D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.size == 1 and vals.ndim == 0:
            vals = np.full(self.grid.shape, float(vals))
        if vals.shape != self.grid.shape:
            raise ConfigError("phase_space.field", f"shape {vals.shape} != grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise ConfigError("phase_space.field", "non-finite values")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid, func):
        X, P = grid.mesh()
        return cls(grid, np.broadcast_to(func(X, P), grid.shape))

    @classmethod
    def constant(cls, grid, value):
        return cls(grid, np.full(grid.shape, float(value)))

    def __call__(self, i, j):
        return self.values[i, j]

    # arithmetic keeps the grid and re-validates finiteness
    def _other(self, other):
        if isinstance(other, Field2D):
            _check_same_grid(self, other)
            return other.values
        return other

    def __add__(self, other):
        return Field2D(self.grid, self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Field2D(self.grid, self.values - self._other(other))

    def __rsub__(self, other):
        return Field2D(self.grid, self._other(other) - self.values)

    def __mul__(self, other):
        return Field2D(self.grid, self.values * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Field2D(self.grid, self.values / self._other(other))

    def __neg__(self):
        return Field2D(self.grid, -self.values)

    def max_abs(self):
        return float(np.max(np.abs(self.values)))

    def to_csv(self, path):
        write_field_csv(self, path)


def _check_same_grid(*fields):
    g = fields[0].grid
    for f in fields[1:]:
        if f.grid != g:
            raise ConfigError("phase_space.grid_mismatch", "fields live on different grids")


# ---------------------------------------------------------------------------
# finite differences


def fd_weights(offsets, order):
    """Finite-difference weights for the ``order``-th derivative at 0.

    ``offsets`` are node positions in units of the spacing. Solves the
    moment conditions ``sum_j w_j s_j^k / k! = delta_{k, order}``.
    """
    s = np.asarray(offsets, dtype=float)
    n = len(s)
    A = np.array([s**k / math.factorial(k) for k in range(n)])
    rhs = np.zeros(n)
    rhs[order] = 1.0
    return np.linalg.solve(A, rhs)


@lru_cache(maxsize=None)
def _stencils(order):
    """(interior, left boundary rows) stencils for 4th-order accuracy."""
    if order == 1:
        interior = (np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0, np.arange(-2, 3))
        width = 5
    else:
        interior = (np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0, np.arange(-2, 3))
        width = 6
    left = []
    for i in (0, 1):
        offs = np.arange(-i, width - i)
        left.append((fd_weights(offs, order), offs))
    return interior, left


def _derivative_1d(a, axis, h, order):
    a = np.moveaxis(a, axis, 0)
    n = a.shape[0]
    out = np.empty_like(a)
    (w, offs), left = _stencils(order)
    acc = np.zeros_like(a[2:n - 2])
    for wk, ok in zip(w, offs):
        if wk != 0.0:
            acc += wk * a[2 + ok:n - 2 + ok]
    out[2:n - 2] = acc
    sign = -1.0 if order == 1 else 1.0
    for i, (wl, ol) in enumerate(left):
        lo = np.zeros_like(a[0])
        hi = np.zeros_like(a[0])
        for wk, ok in zip(wl, ol):
            lo += wk * a[i + ok]
            # mirrored stencil for the right edge
            hi += sign * wk * a[n - 1 - i - ok]
        out[i] = lo
        out[n - 1 - i] = hi
    return np.moveaxis(out / h**order, 0, axis)


def _d(values, grid, axis, order=1):
    h = grid.dx if axis == 0 else grid.dp
    return _derivative_1d(values, axis, h, order)


def partial_derivative(f, axis, order=1):
    """4th-order finite-difference derivative of a field.

    Parameters
    ----------
    f : Field2D
    axis : {'x', 'p'}
    order : {1, 2}
    """
    ax = {"x": 0, "p": 1}.get(axis)
    if ax is None:
        raise ConfigError("phase_space.axis", f"unknown axis {axis!r}")
    if order not in (1, 2):
        raise ConfigError("phase_space.order", "order must be 1 or 2")
    if f.grid.shape[ax] < 6:
        raise ConfigError("phase_space.axis_size", "too few nodes along axis")
    return Field2D(f.grid, _d(f.values, f.grid, ax, order))


class _Derivs:
    """Cached first and second partial derivatives of one array."""

    def __init__(self, values, grid):
        self.f = values
        self.fx = _d(values, grid, 0)
        self.fp = _d(values, grid, 1)
        self.fxx = _d(values, grid, 0, 2)
        self.fpp = _d(values, grid, 1, 2)
        self.fxp = _d(self.fp, grid, 0)


# ---------------------------------------------------------------------------
# quadrature


def pairwise_sum(a):
    """Sum with a fixed balanced-tree reduction order (row-major)."""
    v = np.ravel(np.asarray(a, dtype=float))
    if v.size == 0:
        return 0.0
    size = 1 << (v.size - 1).bit_length()
    if size != v.size:
        v = np.concatenate([v, np.zeros(size - v.size)])
    while v.size > 1:
        v = v[0::2] + v[1::2]
    return float(v[0])


def integrate_array(values, grid):
    return pairwise_sum(values) * grid.weight


def integrate(f):
    """Phase-space integral ``int f dx dp / (2 pi hbar)`` by a Riemann sum."""
    return integrate_array(f.values, f.grid)


# ---------------------------------------------------------------------------
# bilinear forms


def _poisson(df, dg):
    return df.fx * dg.fp - df.fp * dg.fx


def _j2(df, dg):
    # grouping keeps the result exactly symmetric in (f, g)
    return (df.fpp * dg.fxx + df.fxx * dg.fpp) - 2.0 * (df.fxp * dg.fxp)


def _g_functional(d):
    return (d.fpp * d.fx**2 + d.fxx * d.fp**2) - 2.0 * d.fx * d.fp * d.fxp


def poisson_bracket(f, g):
    """``{f, g} = f_x g_p - f_p g_x``."""
    _check_same_grid(f, g)
    df = _Derivs(f.values, f.grid)
    dg = df if g is f else _Derivs(g.values, g.grid)
    return Field2D(f.grid, _poisson(df, dg))


def bilinear_j2(f, g):
    """``f_pp g_xx - 2 f_xp g_xp + f_xx g_pp``, the square of the Moyal bidifferential."""
    _check_same_grid(f, g)
    df = _Derivs(f.values, f.grid)
    dg = df if g is f else _Derivs(g.values, g.grid)
    return Field2D(f.grid, _j2(df, dg))


def moyal_star_truncated(f, g):
    """Coefficients ``(m0, m1, m2)`` of ``f * g`` through second order.

    ``m0 = f g``, ``m1 = {f, g} / 2`` and ``m2 = -J2(f, g) / 8``, so that
    ``x * p`` gives ``m1 = 1/2`` (the imaginary unit of ``i hbar / 2`` is
    carried by the convention, not the stored field).
    """
    _check_same_grid(f, g)
    df = _Derivs(f.values, f.grid)
    dg = df if g is f else _Derivs(g.values, g.grid)
    grid = f.grid
    return (Field2D(grid, f.values * g.values),
            Field2D(grid, 0.5 * _poisson(df, dg)),
            Field2D(grid, -0.125 * _j2(df, dg)))


def g_functional(w0):
    """``w_pp w_x^2 + w_xx w_p^2 - 2 w_x w_p w_xp``."""
    return Field2D(w0.grid, _g_functional(_Derivs(w0.values, w0.grid)))


# ---------------------------------------------------------------------------
# serialization


def write_field_csv(f, path):
    """Write ``x,p,value`` rows in row-major order with 17 significant digits."""
    path = Path(path)
    x, p = f.grid.x, f.grid.p
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "p", "value"])
        for i in range(f.grid.nx):
            xi = f"{x[i]:.17g}"
            row = f.values[i]
            w.writerows([xi, f"{p[j]:.17g}", f"{row[j]:.17g}"] for j in range(f.grid.n_p))


def read_field_csv(path, grid):
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    if data.shape[0] != grid.nx * grid.n_p:
        raise ConfigError("phase_space.csv", "row count does not match grid")
    return Field2D(grid, data[:, 2].reshape(grid.shape))
