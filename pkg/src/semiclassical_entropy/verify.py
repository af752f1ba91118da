"""Self-verification suite behind ``semiclassical-entropy verify``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .carnot import CarnotSpec, carnot_work_series, harmonic_carnot_w2
from .entropy_expansion import (aw_terms, entropy_series, entropy_series_via_fw, fw_terms,
                                verify_star_identity)
from .errors import SemiclassicalError
from .oracle import (Grid1D, diagonalize, displace, log_z_quantum, mix, thermal_density_matrix,
                     thermal_entropy_exact, von_neumann_entropy, wigner_transform, z_quantum)
from .phase_space import Grid2D, integrate
from .potentials import PotentialSpec, ThermalSpec, suggest_grid
from .thermal import harmonic_entropy, log_z_classical, s_thermal_series, zq_expansion
from .wigner_states import displaced_mixture_series, thermal_wigner_series

LEVELS = ("quick", "full")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def _harmonic(beta=1.0, omega=1.0):
    return ThermalSpec(beta, PotentialSpec.harmonic(omega))


def _quartic():
    return ThermalSpec(1.0, PotentialSpec.quartic(1.0))


def check_normalization(n):
    worst = 0.0
    for th in (_harmonic(), _quartic()):
        w = thermal_wigner_series(th, suggest_grid(th, 1.0, n))
        worst = max(worst, abs(integrate(w.c0) - 1.0), abs(integrate(w.c1)), abs(integrate(w.c2)))
    return worst <= 1e-9, f"max normalization defect {worst:.2e} (tol 1e-9)"


def check_star_identity(n):
    th = _harmonic()
    res = verify_star_identity(thermal_wigner_series(th, suggest_grid(th, 1.0, n)), 1.0, 1.0)
    return max(res) <= 1e-5, "residuals " + ", ".join(f"{r:.2e}" for r in res) + " (tol 1e-5)"


def check_symbol_derivative(n, delta=1e-4):
    th = _harmonic()
    w = thermal_wigner_series(th, suggest_grid(th, 1.0, n))
    plus, minus = fw_terms(w, 1.0 + delta, 1.0), fw_terms(w, 1.0 - delta, 1.0)
    alphas = aw_terms(w, 1.0, 1.0)
    err = max(float(np.max(np.abs((fp.values - fm.values) / (2 * delta) - al.values)))
              for fp, fm, al in zip(plus, minus, alphas))
    return err <= 1e-6, f"max |d_a f - A| = {err:.2e} (tol 1e-6)"


def check_route_thermal(n):
    worst, s1 = 0.0, 0.0
    for th in (_harmonic(), _quartic()):
        g = suggest_grid(th, 1.0, n)
        direct = entropy_series(thermal_wigner_series(th, g))
        closed = s_thermal_series(th, g)
        worst = max(worst, *(abs(u - v) for u, v in zip(direct.as_tuple(), closed.as_tuple())))
        s1 = max(s1, abs(direct.s1), abs(closed.s1))
    return worst <= 1e-4 and s1 == 0.0, f"max coefficient gap {worst:.2e} (tol 1e-4), |s1| = {s1}"


def check_route_fw(n):
    th = _harmonic()
    g = suggest_grid(th, 1.0, n)
    worst = 0.0
    for w in (thermal_wigner_series(th, g),):
        a = entropy_series(w).as_tuple()
        b = entropy_series_via_fw(w).as_tuple()
        worst = max(worst, *(abs(u - v) for u, v in zip(a, b)))
    return worst <= 1e-3, f"max direct/fw gap {worst:.2e} (tol 1e-3)"


def check_oracle_consistency(n):
    sd = diagonalize(PotentialSpec.harmonic(1.0), Grid1D(-12.0, 12.0, n), 1.0)
    s_spec = thermal_entropy_exact(sd, 1.0)
    s_rho = von_neumann_entropy(thermal_density_matrix(sd, 1.0))
    gap = abs(s_spec - s_rho)
    return gap <= 1e-8, f"spectrum vs density matrix {gap:.2e} (tol 1e-8)"


def check_oracle_harmonic():
    sd = diagonalize(PotentialSpec.harmonic(1.0), Grid1D(-12.0, 12.0, 2001), 1.0)
    ds = abs(thermal_entropy_exact(sd, 1.0) - float(harmonic_entropy(1.0)))
    dz = abs(z_quantum(sd, 1.0) - 1.0 / (2.0 * math.sinh(0.5)))
    return max(ds, dz) <= 1e-6, f"|dS| = {ds:.2e}, |dZ| = {dz:.2e} (tol 1e-6)"


def check_wigner_normalization():
    th = _harmonic()
    sd = diagonalize(th.potential, Grid1D(-12.0, 12.0, 1201), 1.0)
    W = wigner_transform(thermal_density_matrix(sd, 1.0), suggest_grid(th, 1.0, 256))
    err = abs(integrate(W) - 1.0)
    return err <= 1e-6, f"|int W - 1| = {err:.2e} (tol 1e-6)"


def check_carnot(n):
    spec = CarnotSpec.harmonic(2.0, 1.0, 2.0, 1.0)
    g = suggest_grid(ThermalSpec(0.5, PotentialSpec.harmonic(1.0)), 1.0, n)
    ws = carnot_work_series(spec, g)
    closed = harmonic_carnot_w2(2.0, 1.0, 2.0, 1.0)
    ok = abs(ws.w0 - math.log(2)) <= 1e-5 and ws.w1 == 0.0 and abs(ws.w2 - closed) <= 1e-5
    return ok, f"w0 = {ws.w0:.8f}, w1 = {ws.w1}, w2 = {ws.w2:.8f} vs {closed:.8f}"


def check_star_refinement():
    th = _harmonic()
    coarse = verify_star_identity(thermal_wigner_series(th, suggest_grid(th, 1.0, 256)), 1.0, 1.0)
    fine = verify_star_identity(thermal_wigner_series(th, suggest_grid(th, 1.0, 512)), 1.0, 1.0)
    ok = all(f <= 1e-14 or c / f >= 4.0 for c, f in zip(coarse, fine))
    ratios = ", ".join("roundoff" if f <= 1e-14 else f"{c / f:.1f}" for c, f in zip(coarse, fine))
    return ok, f"256->512 reduction factors {ratios} (need >= 4)"


def check_harmonic_residual():
    th = _harmonic()
    res = {}
    for x in (0.25, 0.5):
        series = s_thermal_series(th, suggest_grid(th, x, 512))
        res[x] = float(harmonic_entropy(x)) - series.evaluate(x)
    target = 0.5**4 / 960
    ok = abs(res[0.5] + target) <= 0.08 * target and abs(res[0.25] / res[0.5] - 1 / 16) <= 0.1 / 16
    return ok, f"residual(0.5) = {res[0.5]:.3e}, ratio = {res[0.25] / res[0.5]:.4f}"


def check_displaced_scaling():
    th = _harmonic()
    res = {}
    for h in (0.2, 0.4):
        g = Grid2D(-9.0, 11.0, 1001, -9.0, 9.0, 512, h)
        series = entropy_series(displaced_mixture_series(thermal_wigner_series(th, g), 2.0, 0.0))
        sd = diagonalize(th.potential, Grid1D(-14.0, 16.0, 2401), h, "sinc_dvr")
        rho = thermal_density_matrix(sd, 1.0)
        exact = von_neumann_entropy(mix(rho, displace(rho, 2.0, 0.0, h), 0.5))
        res[h] = exact - series.evaluate(h)
    ratio = res[0.4] / res[0.2]
    return 12.0 <= ratio <= 20.0, f"residual ratio {ratio:.2f} (need [12, 20])"


def check_log_z_curvature():
    th = _harmonic()
    _, zeta2 = zq_expansion(th, suggest_grid(th, 1.0, 512))
    g = {}
    for h in (0.1, 0.2):
        sd = diagonalize(th.potential, Grid1D(-12.0, 12.0, 2001), h, "sinc_dvr")
        g[h] = log_z_quantum(sd, 1.0) - log_z_classical(th, suggest_grid(th, h, 512))
    curv = (g[0.2] - g[0.1]) / (0.2**2 - 0.1**2)
    ok = abs(-zeta2 + 1 / 24) <= 1e-6 and abs(curv - (-zeta2)) <= 0.02 * zeta2
    return ok, f"-zeta2 = {-zeta2:.8f}, oracle curvature = {curv:.8f}"


def checks(level="quick"):
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    n = 256 if level == "quick" else 512
    suite = [
        ("normalization", lambda: check_normalization(n)),
        ("star_identity", lambda: check_star_identity(n)),
        ("symbol_derivative", lambda: check_symbol_derivative(n)),
        ("route_equivalence_thermal", lambda: check_route_thermal(n)),
        ("route_equivalence_fw", lambda: check_route_fw(n)),
        ("oracle_self_consistency", lambda: check_oracle_consistency(801 if level == "quick" else 2001)),
        ("oracle_harmonic", check_oracle_harmonic),
        ("wigner_normalization", check_wigner_normalization),
        ("carnot_series", lambda: check_carnot(n)),
    ]
    if level == "full":
        suite += [
            ("star_identity_refinement", check_star_refinement),
            ("harmonic_residual", check_harmonic_residual),
            ("displaced_mixture_scaling", check_displaced_scaling),
            ("log_z_curvature", check_log_z_curvature),
        ]
    return suite


def run(level="quick"):
    results = []
    for name, fn in checks(level):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except SemiclassicalError as exc:
            ok, detail = False, f"error {exc.check}"
        results.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return results


def format_report(results):
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  result  detail"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.detail}")
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    return "\n".join(lines)
