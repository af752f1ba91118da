"""Semiclassical expansion of the von Neumann entropy in phase space.

For a Wigner series ``W = c0 + hbar c1 + hbar^2 c2`` the entropy expands as
``S = s0 + hbar s1 + hbar^2 s2`` with

    s0 = -int c0 ln c0
    s1 = -int c1 (ln c0 + 1)
    s2 = -int [c2 (ln c0 + 1) + c1^2 / (2 c0) + B / (16 c0) - G / (12 c0^2)]

where ``B = J2(c0, c0)`` and ``G`` is :func:`~.phase_space.g_functional`.
The second route, :func:`entropy_series_via_fw`, evaluates the phase-space
symbol of ``ln(a rho + b)`` order by order and extrapolates ``b -> 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ConvergenceError
from .phase_space import (Field2D, _Derivs, _g_functional, _j2, integrate_array,
                          moyal_star_truncated)

CLAMP_TAU = 1e-12

# weights of the derivative terms in the second-order integrand
_B_WEIGHT = 1.0 / 16.0
_G_WEIGHT = 1.0 / 12.0


@dataclass(frozen=True)
class EntropySeries:
    """``S(hbar) = s0 + s1 hbar + s2 hbar^2`` (Boltzmann constant = 1).

    ``s0`` contains ``-ln(hbar_grid)`` from the phase-space measure of the
    grid the series was computed on; ``s1`` and ``s2`` do not depend on it.
    """

    s0: float
    s1: float
    s2: float

    def __post_init__(self):
        if not all(np.isfinite((self.s0, self.s1, self.s2))):
            raise ConvergenceError("entropy_expansion.finite", "non-finite entropy coefficient")

    def evaluate(self, hbar):
        return self.s0 + self.s1 * hbar + self.s2 * hbar**2

    def as_tuple(self):
        return (self.s0, self.s1, self.s2)


def _mask(c0, tau=CLAMP_TAU):
    return c0 > tau * np.max(c0)


def _masked_log(c0, mask):
    out = np.zeros_like(c0)
    out[mask] = np.log(c0[mask])
    return out


def _masked_integral(integrand, mask, grid):
    return integrate_array(np.where(mask, integrand, 0.0), grid)


def entropy_order0(w, tau=CLAMP_TAU):
    """Classical Gibbs entropy ``-int c0 ln c0``."""
    c0 = w.c0.values
    m = _mask(c0, tau)
    return -_masked_integral(c0 * _masked_log(c0, m), m, w.grid)


def entropy_order1(w, tau=CLAMP_TAU):
    c0, c1 = w.c0.values, w.c1.values
    if not np.any(c1):
        return 0.0
    m = _mask(c0, tau)
    return -_masked_integral(c1 * (_masked_log(c0, m) + 1.0), m, w.grid)


def _order2_integrand(c0, c1, c2, d0, m):
    safe = np.where(m, c0, 1.0)
    B = _j2(d0, d0)
    G = _g_functional(d0)
    return (c2 * (_masked_log(c0, m) + 1.0) + c1**2 / (2.0 * safe)
            + _B_WEIGHT * B / safe - _G_WEIGHT * G / safe**2)


def entropy_order2(w, tau=CLAMP_TAU):
    c0, c1, c2 = (c.values for c in w.coefficients())
    m = _mask(c0, tau)
    d0 = _Derivs(c0, w.grid)
    return -_masked_integral(_order2_integrand(c0, c1, c2, d0, m), m, w.grid)


def entropy_series(w, tau=CLAMP_TAU):
    return EntropySeries(entropy_order0(w, tau), entropy_order1(w, tau), entropy_order2(w, tau))


# ---------------------------------------------------------------------------
# order-by-order symbols of A = rho / (a rho + b) and f = ln(a rho + b)


def _check_ab(a, b):
    if not b > 0:
        raise ConfigError("entropy_expansion.b", "b must be positive")
    if a < 0:
        raise ConfigError("entropy_expansion.a", "a must be non-negative")


def aw_terms(w, a, b):
    """Real-convention coefficients ``(alpha0, alpha1, alpha2)`` of the symbol of ``rho/(a rho + b)``.

    With ``D = a c0 + b``:
    ``alpha0 = c0/D``, ``alpha1 = b c1/D^2`` and
    ``alpha2 = b c2/D^2 - a b c1^2/D^3 + (a/8) [b B/D^3 - 2 a b G/D^4]``.
    """
    _check_ab(a, b)
    c0, c1, c2 = (c.values for c in w.coefficients())
    d0 = _Derivs(c0, w.grid)
    B, G = _j2(d0, d0), _g_functional(d0)
    D = a * c0 + b
    alpha0 = c0 / D
    alpha1 = b * c1 / D**2
    alpha2 = (b * c2 / D**2 - a * b * c1**2 / D**3
              + a / 8.0 * (b * B / D**3 - 2.0 * a * b * G / D**4))
    g = w.grid
    return Field2D(g, alpha0), Field2D(g, alpha1), Field2D(g, alpha2)


def fw_terms(w, a, b):
    """Real-convention coefficients ``(phi0, phi1, phi2)`` of the symbol of ``ln(a rho + b)``.

    ``phi0 = ln D``, ``phi1 = a c1/D`` and
    ``phi2 = a c2/D + a^2 (B - 8 c1^2)/(16 D^2) - a^3 G/(12 D^3)``;
    ``d phi_k / da = alpha_k`` with ``phi_k(a=0) = (ln b, 0, 0)``.
    """
    _check_ab(a, b)
    c0, c1, c2 = (c.values for c in w.coefficients())
    d0 = _Derivs(c0, w.grid)
    B, G = _j2(d0, d0), _g_functional(d0)
    D = a * c0 + b
    phi0 = np.log(D)
    phi1 = a * c1 / D
    phi2 = a * c2 / D + a**2 * (B - 8.0 * c1**2) / (16.0 * D**2) - a**3 * G / (12.0 * D**3)
    g = w.grid
    return Field2D(g, phi0), Field2D(g, phi1), Field2D(g, phi2)


def verify_star_identity(w, a, b, tau=CLAMP_TAU):
    """Max-abs residuals of ``(a W + b) * A_w = W`` at orders 0, 1 and 2.

    Star products use :func:`~.phase_space.moyal_star_truncated`; nodes where
    ``c0 <= tau max(c0)`` are excluded.
    """
    alphas = aw_terms(w, a, b)
    c0, c1, c2 = w.coefficients()
    lhs = (a * c0 + b, a * c1, a * c2)
    # star[i][j] = (m0, m1, m2) of lhs_i * alpha_j
    star = {}
    for i in range(3):
        for j in range(3 - i):
            star[i, j] = moyal_star_truncated(lhs[i], alphas[j])
    m = _mask(c0.values, tau)
    residuals = []
    for order, target in enumerate((c0, c1, c2)):
        total = np.zeros(w.grid.shape)
        for (i, j), ms in star.items():
            k = order - i - j
            if k >= 0:
                total = total + ms[k].values
        r = np.abs(total - target.values)
        residuals.append(float(np.max(r[m])) if np.any(m) else 0.0)
    return tuple(residuals)


def _series_at_b(w, b, m):
    phis = [f.values for f in fw_terms(w, 1.0, b)]
    cs = [c.values for c in w.coefficients()]
    out = []
    for n in range(3):
        integrand = sum(cs[j] * phis[n - j] for j in range(n + 1))
        out.append(-_masked_integral(integrand, m, w.grid))
    return out


def entropy_series_via_fw(w, b_values=(1e-3, 1e-5, 1e-7), tau=CLAMP_TAU):
    """Entropy coefficients from ``-int W f_w`` at ``a = 1``, extrapolated to ``b -> 0``.

    The sequence is assumed linear in ``b`` near the limit; the last two
    entries give the extrapolated value.
    """
    bs = [float(b) for b in b_values]
    if len(bs) < 3 or any(b <= 0 for b in bs) or any(x <= y for x, y in zip(bs, bs[1:])):
        raise ConfigError("entropy_expansion.b_values",
                          "need >= 3 positive, strictly decreasing values")
    m = _mask(w.c0.values, tau)
    seq = np.array([_series_at_b(w, b, m) for b in bs])  # (len(bs), 3)
    steps = np.abs(np.diff(seq, axis=0))
    scale = np.maximum(np.abs(seq[-1]), 1.0)
    for k in range(3):
        for d_prev, d_next in zip(steps[:-1, k], steps[1:, k]):
            if d_next > d_prev and d_next > 1e-12 * scale[k]:
                raise ConvergenceError("entropy_expansion.fw_extrapolation",
                                       f"order {k} sequence is not converging")
    b1, b2 = bs[-2], bs[-1]
    extrap = (b1 * seq[-1] - b2 * seq[-2]) / (b1 - b2)
    return EntropySeries(*map(float, extrap))
