"""Command-line front end.

Commands: ``thermal``, ``expansion``, ``carnot``, ``verify``. Errors print a
single line ``ERROR <code>: <module>.<check>`` on standard error and exit with
1 (configuration) or 2 (numerical failure).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_suite
from .carnot import CarnotSpec, carnot_work_exact, carnot_work_series
from .config import load_config
from .entropy_expansion import entropy_series, entropy_series_via_fw
from .errors import ConfigError, SemiclassicalError
from .oracle import diagonalize, thermal_entropy_exact
from .phase_space import write_field_csv
from .thermal import s_thermal_series
from .wigner_states import displaced_mixture_series, eta_field, thermal_wigner_series


def _fmt(v):
    return f"{v:.17g}"


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _dump_series(series, directory, extra=None):
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name, f in zip(("c0", "c1", "c2"), series.coefficients()):
        write_field_csv(f, d / f"{name}.csv")
    for name, f in (extra or {}).items():
        write_field_csv(f, d / f"{name}.csv")


def _exact_entropy(cfg, potential, beta, hbar):
    sd = diagonalize(potential, cfg.oracle(), hbar, cfg.oracle_method)
    return thermal_entropy_exact(sd, beta)


def _hbar_scan(hbar):
    return hbar * np.geomspace(0.25, 1.0, 5)


def _plot(path, hbars, exact, series, title):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    exact, series = np.asarray(exact), np.asarray(series)
    resid = np.abs(exact - series)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(hbars, exact, "o-", label="exact")
    ax1.plot(hbars, series, "s--", label="2nd-order series")
    ax1.set_xlabel("hbar")
    ax1.set_title(title)
    ax1.legend()
    ok = resid > 0
    ax2.loglog(hbars[ok], resid[ok], "o-")
    if np.count_nonzero(ok) >= 2:
        slope = np.polyfit(np.log(hbars[ok]), np.log(resid[ok]), 1)[0]
        ax2.set_title(f"|residual|, slope {slope:.2f}")
    ax2.set_xlabel("hbar")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_thermal(cfg, args):
    th = cfg.thermal
    series = s_thermal_series(th, cfg.grid)
    s_at = series.evaluate(cfg.hbar)
    s_exact = _exact_entropy(cfg, cfg.potential, cfg.beta, cfg.hbar)
    if args.dump_fields:
        _dump_series(thermal_wigner_series(th, cfg.grid), args.dump_fields,
                     {"eta": eta_field(th, cfg.grid)})
    if args.svg:
        hbars = _hbar_scan(cfg.hbar)
        # s0 shifts by -ln(hbar) with the measure; s2 does not depend on it
        ser = [series.s0 - math.log(h / cfg.hbar) + series.s2 * h**2 for h in hbars]
        ex = [_exact_entropy(cfg, cfg.potential, cfg.beta, h) for h in hbars]
        _plot(args.svg, hbars, ex, ser, "thermal entropy")
    header = ["beta", "hbar", "s_classical", "s1", "s2", "s_series_at_hbar", "s_exact", "residual"]
    row = [cfg.beta, cfg.hbar, series.s0, series.s1, series.s2, s_at, s_exact, s_exact - s_at]
    return _csv_text(header, [row])


def cmd_expansion(cfg, args):
    w = thermal_wigner_series(cfg.thermal, cfg.grid)
    if cfg.displaced is not None:
        w = displaced_mixture_series(w, *cfg.displaced)
    direct = entropy_series(w)
    if args.dump_fields:
        _dump_series(w, args.dump_fields)
    header = ["s0", "s1", "s2"]
    row = list(direct.as_tuple())
    if args.route == "fw":
        fw = entropy_series_via_fw(w)
        header += ["s0_fw", "s1_fw", "s2_fw", "d0", "d1", "d2"]
        row += list(fw.as_tuple()) + [a - b for a, b in zip(direct.as_tuple(), fw.as_tuple())]
    return _csv_text(header, [row])


def _carnot_spec(cfg, hbar):
    c = cfg.carnot
    return CarnotSpec(c.t_hot, c.t_cold, cfg.potential.with_control(c.lambda_a),
                      cfg.potential.with_control(c.lambda_b), hbar)


def cmd_carnot(cfg, args):
    if cfg.carnot is None:
        raise ConfigError("config.carnot", "carnot section missing")
    spec = _carnot_spec(cfg, cfg.hbar)
    ws = carnot_work_series(spec, cfg.grid)
    w_at = ws.evaluate(cfg.hbar)
    w_exact = carnot_work_exact(spec, cfg.oracle(), cfg.oracle_method)
    if args.svg:
        hbars = _hbar_scan(cfg.hbar)
        ex = [carnot_work_exact(_carnot_spec(cfg, h), cfg.oracle(), cfg.oracle_method)
              for h in hbars]
        _plot(args.svg, hbars, ex, [ws.evaluate(h) for h in hbars], "Carnot net work")
    header = ["w0", "w1", "w2", "w_series_at_hbar", "w_exact", "residual"]
    return _csv_text(header, [[ws.w0, ws.w1, ws.w2, w_at, w_exact, w_exact - w_at]])


COMMANDS = {"thermal": cmd_thermal, "expansion": cmd_expansion, "carnot": cmd_carnot}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="semiclassical-entropy",
        description="Semiclassical entropy corrections, thermal states and quantum Carnot work.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--svg", help="write a convergence plot to this SVG file")
        p.add_argument("--dump-fields", metavar="DIR", help="write coefficient fields as CSV")
        p.add_argument("--route", choices=("direct", "fw"), default="direct")
    v = sub.add_parser("verify")
    v.add_argument("level", nargs="?", choices=verify_suite.LEVELS, default="quick")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        results = verify_suite.run(args.level)
        print(verify_suite.format_report(results))
        failed = [r.name for r in results if not r.passed]
        if failed:
            for name in failed:
                print(f"ERROR 2: verify.{name}", file=sys.stderr)
            return 2
        return 0
    try:
        cfg = load_config(args.config)
        text = COMMANDS[args.command](cfg, args)
    except SemiclassicalError as exc:
        print(f"ERROR {exc.code}: {exc.check}", file=sys.stderr)
        return exc.code
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
