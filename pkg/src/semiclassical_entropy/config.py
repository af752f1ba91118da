"""JSON run configuration for the command-line front end.

Schema (UTF-8 JSON object)::

    {
      "hbar": 0.5,
      "beta": 1.0,
      "potential": {"kind": "harmonic", "mass": 1.0, "omega": 1.0},
      "grid": {"x_min": -9, "x_max": 9, "nx": 512, "p_min": -9, "p_max": 9, "np": 512},
      "carnot": {"t_hot": 2.0, "t_cold": 1.0, "lambda_a": 2.0, "lambda_b": 1.0},
      "displaced": {"x0": 2.0, "p0": 0.0},
      "oracle": {"n": 2001, "x_min": -12, "x_max": 12, "method": "fd5"}
    }

``potential.kind`` is ``harmonic`` (``omega``), ``quartic`` (``g``) or
``tabulated`` (``table: {"x": [...], "u": [...]}``). ``grid``, ``carnot``,
``displaced`` and ``oracle`` are optional; a missing grid is sized
automatically, a missing oracle box is 1.5x the phase-space x-range.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .oracle import METHODS, Grid1D
from .phase_space import Grid2D
from .potentials import PotentialSpec, ThermalSpec, suggest_grid

DEFAULT_NODES = 512
DEFAULT_ORACLE_NODES = 2001


def _num(d, key, where, positive=False, default=None):
    if key not in d:
        if default is not None:
            return default
        raise ConfigError(f"config.{where}", f"missing field {key!r}")
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"config.{where}", f"{key} must be a finite number")
    if positive and not v > 0:
        raise ConfigError(f"config.{where}", f"{key} must be positive")
    return float(v)


def _int(d, key, where, default=None):
    v = d.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"config.{where}", f"{key} must be an integer")
    return v


def _section(raw, key):
    v = raw.get(key)
    if v is not None and not isinstance(v, dict):
        raise ConfigError(f"config.{key}", "must be an object")
    return v


@dataclass(frozen=True)
class CarnotConfig:
    t_hot: float
    t_cold: float
    lambda_a: float
    lambda_b: float


@dataclass(frozen=True)
class RunConfig:
    hbar: float
    beta: float
    potential: PotentialSpec
    grid: Grid2D
    carnot: CarnotConfig | None = None
    displaced: tuple | None = None
    oracle_grid: Grid1D | None = None
    oracle_method: str = "fd5"

    @property
    def thermal(self):
        return ThermalSpec(self.beta, self.potential)

    def oracle(self):
        if self.oracle_grid is not None:
            return self.oracle_grid
        half = 0.75 * (self.grid.x_max - self.grid.x_min)
        mid = 0.5 * (self.grid.x_max + self.grid.x_min)
        if self.potential.confined:
            return Grid1D(self.grid.x_min, self.grid.x_max, DEFAULT_ORACLE_NODES)
        return Grid1D(mid - half, mid + half, DEFAULT_ORACLE_NODES)


def _potential(raw):
    if not isinstance(raw, dict):
        raise ConfigError("config.potential", "missing or not an object")
    kind = raw.get("kind")
    mass = _num(raw, "mass", "potential", positive=True, default=1.0)
    if kind == "harmonic":
        return PotentialSpec.harmonic(_num(raw, "omega", "potential", positive=True), mass)
    if kind == "quartic":
        return PotentialSpec.quartic(_num(raw, "g", "potential", positive=True), mass)
    if kind == "tabulated":
        table = raw.get("table")
        if not isinstance(table, dict) or "x" not in table or "u" not in table:
            raise ConfigError("config.potential", "tabulated potential needs table.x and table.u")
        try:
            return PotentialSpec.tabulated(table["x"], table["u"], mass)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError("config.potential", str(exc)) from exc
    raise ConfigError("config.potential", f"unknown kind {kind!r}")


def parse_config(raw):
    if not isinstance(raw, dict):
        raise ConfigError("config.document", "top level must be an object")
    hbar = _num(raw, "hbar", "hbar", positive=True)
    beta = _num(raw, "beta", "beta", positive=True)
    potential = _potential(raw.get("potential"))

    carnot = None
    craw = _section(raw, "carnot")
    if craw is not None:
        carnot = CarnotConfig(*(_num(craw, k, "carnot", positive=True)
                                for k in ("t_hot", "t_cold", "lambda_a", "lambda_b")))
        if not carnot.t_hot > carnot.t_cold:
            raise ConfigError("config.carnot", "t_hot must exceed t_cold")
        if potential.kind == "tabulated":
            raise ConfigError("config.carnot", "carnot needs a harmonic or quartic potential")

    displaced = None
    draw = _section(raw, "displaced")
    if draw is not None:
        displaced = (_num(draw, "x0", "displaced", default=0.0),
                     _num(draw, "p0", "displaced", default=0.0))

    graw = _section(raw, "grid")
    if graw is None:
        if carnot is not None:
            # the softer substance needs the wider box
            lam = min(carnot.lambda_a, carnot.lambda_b)
            sizing = ThermalSpec(1.0 / carnot.t_hot, potential.with_control(lam))
        else:
            sizing = ThermalSpec(beta, potential)
        grid = suggest_grid(sizing, hbar, DEFAULT_NODES, shift=displaced or (0.0, 0.0))
    else:
        grid = Grid2D(_num(graw, "x_min", "grid"), _num(graw, "x_max", "grid"),
                      _int(graw, "nx", "grid", DEFAULT_NODES),
                      _num(graw, "p_min", "grid"), _num(graw, "p_max", "grid"),
                      _int(graw, "np", "grid", DEFAULT_NODES), hbar)

    oracle_grid, method = None, "fd5"
    oraw = _section(raw, "oracle")
    if oraw is not None:
        method = oraw.get("method", "fd5")
        if method not in METHODS:
            raise ConfigError("config.oracle", f"unknown method {method!r}")
        if "x_min" in oraw or "x_max" in oraw:
            oracle_grid = Grid1D(_num(oraw, "x_min", "oracle"), _num(oraw, "x_max", "oracle"),
                                 _int(oraw, "n", "oracle", DEFAULT_ORACLE_NODES))
        elif "n" in oraw:
            base = RunConfig(hbar, beta, potential, grid).oracle()
            oracle_grid = Grid1D(base.x_min, base.x_max, _int(oraw, "n", "oracle"))
    return RunConfig(hbar, beta, potential, grid, carnot, displaced, oracle_grid, method)


def load_config(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config.file", str(exc)) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config.json", str(exc)) from exc
    return parse_config(raw)
