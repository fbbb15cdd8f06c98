"""Command-line front end.

Subcommands ``profile``, ``converge``, ``soliton`` and ``gas-frame`` write
CSV or ``key=value`` text.  Flags override values from an optional
``--config`` file of ``key = value`` lines (keys are flag names without the
leading dashes).

Exit codes: 0 success, 2 bad configuration, 3 numerical failure,
4 no blow-up or degenerate blow-up, 5 window too small.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .characteristics import CharacteristicSolution
from .errors import (DegenerateError, DomainError, NoBlowupError, NumericalError,
                     WindowError)
from .gas import GasParams, build_gas_problem, frame_constants
from .problems import resolve_problem
from .profile import UniversalProfile, eval_w
from .renorm import convergence_sweep, renorm_x
from .spectral import (GridSpec, fit_speed_and_growth, growth_exponent,
                       sample_and_transform, synthetic_wave, track_wave)

EXIT_CONFIG, EXIT_NUMERIC, EXIT_NOBLOWUP, EXIT_WINDOW = 2, 3, 4, 5

DEFAULTS = {
    "profile": {"grid": "-5:5:1001", "t_eval": "-1", "c": "1"},
    "converge": {"grid": "-1:1:2001", "lambdas": "1,10,100,1000"},
    "soliton": {"grid": "-50:50:1048576", "taus": "2,3,4,5,6", "order": "2"},
    "gas-frame": {},
}
COMMON = {"ic": "erf", "flux": "burgers", "gamma": str(5.0 / 3.0), "A": str(3.0 / 5.0),
          "precision": "17"}


class ConfigError(Exception):
    pass


def fmt(value: float, precision: int = 17) -> str:
    """Shortest round-trip text of ``value`` rounded to ``precision`` digits."""
    value = float(f"{float(value):.{precision}g}") + 0.0
    s = repr(value)
    return s[:-2] if s.endswith(".0") else s


def write_csv(path, header, rows, precision):
    lines = [",".join(header)]
    lines += [",".join(fmt(v, precision) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def read_config(path) -> dict:
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def parse_grid(spec: str):
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise ConfigError(f"grid must be XMIN:XMAX:N, got {spec!r}") from exc
    if n < 2 or not b > a:
        raise ConfigError(f"grid needs N >= 2 and XMAX > XMIN, got {spec!r}")
    return a, b, n


def parse_floats(spec: str, name: str):
    try:
        vals = [float(s) for s in spec.split(",") if s.strip()]
    except ValueError as exc:
        raise ConfigError(f"--{name} must be comma-separated numbers") from exc
    if not vals:
        raise ConfigError(f"--{name} is empty")
    return vals


def _float(cfg, key):
    try:
        return float(cfg[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"--{key.replace('_', '-')} must be a number") from exc


def _int(cfg, key):
    try:
        return int(cfg[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"--{key.replace('_', '-')} must be an integer") from exc


def _flag(cfg, key) -> bool:
    val = cfg.get(key)
    if isinstance(val, str):
        return val.strip().lower() in ("1", "true", "yes", "on")
    return bool(val)


def _out_paths(cfg, suffix):
    if cfg.get("out") is None:
        return None, None
    out = Path(cfg["out"])
    return out, out.with_name(out.stem + suffix)


def write_gnuplot(csv_path: Path, body: str):
    script = csv_path.with_suffix(".gp")
    script.write_text("set datafile separator ','\nset key autotitle columnhead\n" + body)


def cmd_profile(cfg) -> int:
    c, t, prec = _float(cfg, "c"), _float(cfg, "t_eval"), _int(cfg, "precision")
    a, b, n = parse_grid(cfg["grid"])
    if not c > 0 or t > 0:
        raise ConfigError("profile needs c > 0 and t <= 0")
    xs = np.linspace(a, b, n)
    ws = eval_w(UniversalProfile(c), t, xs)
    out, _ = _out_paths(cfg, "")
    write_csv(out, ["x", "w"], zip(xs, ws), prec)
    if _flag(cfg, "gnuplot") and out is not None:
        write_gnuplot(out, f"plot '{out.name}' using 1:2 with lines\n")
    return 0


def _problem(cfg):
    return resolve_problem(cfg["ic"], cfg["flux"], _float(cfg, "gamma"), _float(cfg, "A"))


def _check_lambdas(lams):
    if any(l < 1 for l in lams) or any(b <= a for a, b in zip(lams, lams[1:])):
        raise ConfigError("lambdas must be >= 1 and strictly increasing")


def cmd_converge(cfg) -> int:
    prec = _int(cfg, "precision")
    lams = parse_floats(cfg["lambdas"], "lambdas")
    _check_lambdas(lams)
    a, b, n = parse_grid(cfg["grid"])
    xs = np.linspace(a, b, n)
    prob = _problem(cfg)
    t_eval = prob.frame.t0 if cfg.get("t_eval") is None else _float(cfg, "t_eval")
    sweep = convergence_sweep(prob.flux, prob.ic, prob.frame, lams, t_eval, xs)
    out, dump = _out_paths(cfg, "_profiles.csv")
    write_csv(out, ["lambda", "sup_error"], sweep, prec)
    if _flag(cfg, "dump_profiles"):
        if dump is None:
            raise ConfigError("--dump-profiles needs --out")
        sol = CharacteristicSolution(prob.ic, prob.frame.t0, prob.flux)
        target = eval_w(UniversalProfile(prob.frame.c), t_eval, xs) / float(prob.flux.d2f(0.0))
        rows = []
        for lam in lams:
            scaled = renorm_x(sol, lam, t_eval, xs)
            rows += [(lam, x, u, w) for x, u, w in zip(xs, scaled, target)]
        write_csv(dump, ["lambda", "x", "u_scaled", "w_target"], rows, prec)
    if _flag(cfg, "gnuplot") and out is not None:
        write_gnuplot(out, f"set logscale xy\nplot '{out.name}' using 1:2 with linespoints\n")
    return 0


def _dump_rows(fields, decay_comp, max_rows=1024):
    # thin the FFT bins to roughly log-spaced indices for plotting
    rows = []
    for fld in fields:
        m = fld.xis.size
        idx = np.unique(np.geomspace(1, m, min(max_rows, m)).astype(int) - 1)
        comp = fld.compensated(decay_comp)
        rows += [(fld.tau, fld.xis[i], comp[i]) for i in idx]
    return rows


def cmd_soliton(cfg) -> int:
    prec = _int(cfg, "precision")
    taus = parse_floats(cfg["taus"], "taus")
    order = _int(cfg, "order")
    if order < 0 or len(taus) < 3 or any(t < 0 for t in taus):
        raise ConfigError("soliton needs order >= 0 and at least three taus >= 0")
    decay = growth_exponent(order)
    if cfg["ic"] == "synthetic":
        fields = synthetic_wave(taus, np.linspace(-10, 30, 4001), growth=decay, n=order)
    else:
        a, b, n = parse_grid(cfg["grid"])
        try:
            grid = GridSpec(a, b, n)
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
        prob = _problem(cfg)
        sol = CharacteristicSolution(prob.ic, prob.frame.t0, prob.flux)
        fields = [sample_and_transform(sol, prob.frame.t0 * np.exp(-tau), order, grid)
                  for tau in taus]
    locate = None if order >= 2 else 2
    traj = track_wave(fields, decay, locate_order=locate)
    fit = fit_speed_and_growth(traj)

    out, traj_path = _out_paths(cfg, "_trajectory.csv")
    if out is not None:
        write_csv(out, ["tau", "xi", "amp"], _dump_rows(fields, decay), prec)
        write_csv(traj_path, ["tau", "xi_peak", "amp_peak"],
                  [(p.tau, p.xi_peak, p.amp_peak) for p in traj], prec)
        out.with_name(out.stem + "_fit.txt").write_text(fit.report(prec))
        if _flag(cfg, "gnuplot"):
            write_gnuplot(out, f"set xlabel 'xi'\nplot '{out.name}' using 2:3 with dots\n")
    sys.stdout.write(fit.report(prec))
    return 0


def cmd_gas_frame(cfg) -> int:
    gamma, A = _float(cfg, "gamma"), _float(cfg, "A")
    if not gamma > 1 or not A > 0:
        raise ConfigError("gas-frame needs gamma > 1 and A > 0")
    flux, _, frame = build_gas_problem(GasParams(gamma=gamma, A=A))
    consts = frame_constants(frame)
    consts["f2"] = float(flux.d2f(0.0))
    text = "".join(f"{k}={v:.6f}\n" for k, v in consts.items())
    out, _ = _out_paths(cfg, "")
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
    return 0


COMMANDS = {"profile": cmd_profile, "converge": cmd_converge,
            "soliton": cmd_soliton, "gas-frame": cmd_gas_frame}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="burgers-blowup",
                                     description="Universal blow-up experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--out", help="output path (stdout when omitted)")
        p.add_argument("--config", help="file of 'key = value' lines")
        p.add_argument("--precision", help="significant digits (default 17)")
        p.add_argument("--ic", help="erf (alias burgers-erf) | gas | poly:c1,c3,... | synthetic (soliton only)")
        p.add_argument("--flux", help="burgers | gas")
        p.add_argument("--gamma", help="adiabatic exponent for the gas problem")
        p.add_argument("--A", dest="A", help="entropy constant for the gas problem")
        p.add_argument("--lambdas", help="L1,L2,... renormalisation factors")
        p.add_argument("--taus", help="T1,T2,... log-times")
        p.add_argument("--t-eval", dest="t_eval", help="evaluation time")
        p.add_argument("--c", help="cusp coefficient (profile)")
        p.add_argument("--grid", help="XMIN:XMAX:N")
        p.add_argument("--order", help="derivative order (soliton)")
        p.add_argument("--dump-profiles", dest="dump_profiles", action="store_true", default=None)
        p.add_argument("--gnuplot", action="store_true", default=None)
    return parser


def resolve_config(args) -> dict:
    cfg = dict(COMMON)
    cfg.update(DEFAULTS[args.command])
    if args.config:
        cfg.update(read_config(args.config))
    cfg.update({k: v for k, v in vars(args).items() if v is not None})
    return cfg


VALUE_FLAGS = ("--grid", "--t-eval", "--lambdas", "--taus", "--c", "--gamma", "--A", "--ic")


def _glue_negative_values(argv):
    # argparse reads "-2:2:5" or "-1" after a flag as another option
    out, it = [], iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoBlowupError, DegenerateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOBLOWUP
    except WindowError as exc:
        print(f"error: {exc} (try a larger --grid window)", file=sys.stderr)
        return EXIT_WINDOW
    except (NumericalError, FloatingPointError, ZeroDivisionError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
