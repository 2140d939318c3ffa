"""Command-line front end: trajectory dumps, degree reports, divisibility checks.

Exit codes: 0 success, 2 invalid configuration, 3 quadrature failure,
4 indeterminate divisibility verdict (singular intermediate map).
Output files are deterministic: fixed column order, floats at 12
significant digits, LF line endings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import __version__
from .channels import ColoredNoiseParams, choi_of_affine, intermediate_map
from .exceptions import (
    InvalidStateError,
    NonInvertibleMapError,
    QuadratureConvergenceError,
)
from .families import ColoredNoiseDephasingFamily, OhmicDephasingFamily
from .measure import n_e_from_trajectory, n_s_from_trajectory, optimize_over_states
from .spectral import SpectralParams
from .states import QubitState, entropy_rate_series

FAMILY_OHMIC = "ohmic-dephasing"
FAMILY_COLORED = "colored-noise"

DEFAULT_HORIZONS = {FAMILY_OHMIC: 10.0, FAMILY_COLORED: 30.0}

#: number of time samples (hence ~n^2/2 ordered pairs) used by `check`
CHECK_TIME_SAMPLES = 25

#: eigenvalue threshold below which an intermediate Choi matrix counts as
#: a complete-positivity violation
CHECK_CP_TOL = -1e-10

MEASURE_COLUMNS = [
    "family",
    "s",
    "omega_c",
    "a_tau",
    "horizon",
    "steps",
    "state",
    "n_e",
    "n_s",
    "num_intervals",
    "intervals",
    "gains",
    "argmax_x",
    "argmax_y",
    "argmax_z",
    "tie",
]

CHECK_COLUMNS = [
    "family",
    "s",
    "omega_c",
    "a_tau",
    "horizon",
    "verdict",
    "min_choi_eigenvalue",
    "witness_t1",
    "witness_t2",
    "pairs_checked",
    "singular_pairs",
]


class ConfigError(ValueError):
    """Invalid run configuration (maps to exit code 2)."""


@dataclass
class RunConfig:
    command: str
    family: str
    s: float
    omega_c: float
    a_tau: float
    horizon: float
    steps: int
    state: Optional[np.ndarray]
    optimize: bool
    sweep: Optional[tuple]
    out: str
    fmt: str


def fmt_float(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.12g}"


def _round12(x: float) -> float:
    return float(fmt_float(x))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbackflow",
        description="Detect and quantify entropy backflow for unital qubit dephasing models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subcommands = {
        "trajectory": "per-timestep eigenvalue/entropy trajectory for one initial state",
        "measure": "non-Markovianity degree report, optionally sweeping a family parameter",
        "check": "divisibility check via intermediate-map Choi eigenvalues",
    }
    for name, help_text in subcommands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", required=True, choices=[FAMILY_OHMIC, FAMILY_COLORED])
        p.add_argument("--s", type=float, default=1.0, help="Ohmicity parameter (ohmic-dephasing)")
        p.add_argument("--omega-c", type=float, default=1.0, help="cutoff frequency (ohmic-dephasing)")
        p.add_argument("--a-tau", type=float, default=1.0, help="fluctuation rate a*tau (colored-noise, tau=1)")
        p.add_argument("--horizon", type=float, default=None, help="time horizon (default 10 ohmic / 30 colored)")
        p.add_argument("--steps", type=int, default=4000, help="number of time samples")
        if name in ("trajectory", "measure"):
            p.add_argument("--state", type=str, default=None, help="initial Bloch vector x,y,z")
            p.add_argument("--optimize", action="store_true", help="optimize over initial states")
        if name == "measure":
            p.add_argument("--sweep", type=str, default=None, help="sweep spec param:lo:hi:n (param: s or a_tau)")
        p.add_argument("--out", type=str, default="-", help="output path ('-' for stdout)")
        p.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    return parser


def _parse_state(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"state must be three comma-separated numbers, got {text!r}")
    try:
        vec = np.array([float(p) for p in parts])
    except ValueError as exc:
        raise ConfigError(f"could not parse state {text!r}: {exc}") from None
    try:
        QubitState.from_bloch(vec)
    except InvalidStateError as exc:
        raise ConfigError(str(exc)) from None
    return vec


def _parse_sweep(text: str):
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(f"sweep spec must be param:lo:hi:n, got {text!r}")
    param = parts[0].replace("-", "_")
    if param not in ("s", "a_tau"):
        raise ConfigError(f"sweep parameter must be s or a_tau, got {parts[0]!r}")
    try:
        lo, hi = float(parts[1]), float(parts[2])
        count = int(parts[3])
    except ValueError as exc:
        raise ConfigError(f"could not parse sweep {text!r}: {exc}") from None
    if count < 1 or hi < lo:
        raise ConfigError(f"sweep needs hi >= lo and n >= 1, got {text!r}")
    return param, lo, hi, count


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    horizon = args.horizon if args.horizon is not None else DEFAULT_HORIZONS[args.family]
    if not horizon > 0.0:
        raise ConfigError(f"horizon must be positive, got {horizon}")
    if args.steps < 2:
        raise ConfigError(f"need at least 2 time steps, got {args.steps}")
    state = None
    optimize = bool(getattr(args, "optimize", False))
    state_text = getattr(args, "state", None)
    if state_text is not None and optimize:
        raise ConfigError("--state and --optimize are mutually exclusive")
    if state_text is not None:
        state = _parse_state(state_text)
    elif not optimize:
        # defaults: `measure` optimizes over initial states, `trajectory`
        # follows the equatorial pure state
        if args.command == "measure":
            optimize = True
        elif args.command == "trajectory":
            state = np.array([1.0, 0.0, 0.0])
    if args.family == FAMILY_OHMIC:
        if not args.s > 0.0:
            raise ConfigError(f"Ohmicity parameter must be positive, got {args.s}")
        if not args.omega_c > 0.0:
            raise ConfigError(f"cutoff frequency must be positive, got {args.omega_c}")
    else:
        if not args.a_tau > 0.0:
            raise ConfigError(f"fluctuation rate must be positive, got {args.a_tau}")
    sweep = None
    if getattr(args, "sweep", None) is not None:
        sweep = _parse_sweep(args.sweep)
        param = sweep[0]
        if args.family == FAMILY_OHMIC and param != "s":
            raise ConfigError("ohmic-dephasing sweeps the parameter s")
        if args.family == FAMILY_COLORED and param != "a_tau":
            raise ConfigError("colored-noise sweeps the parameter a_tau")
        if sweep[1] <= 0.0:
            raise ConfigError("sweep values must stay positive")
    return RunConfig(
        command=args.command,
        family=args.family,
        s=args.s,
        omega_c=args.omega_c,
        a_tau=args.a_tau,
        horizon=horizon,
        steps=args.steps,
        state=state,
        optimize=optimize,
        sweep=sweep,
        out=args.out,
        fmt=args.fmt,
    )


def _build_family(config: RunConfig, override: Optional[float] = None):
    if config.family == FAMILY_OHMIC:
        s = override if override is not None else config.s
        return OhmicDephasingFamily(SpectralParams(s=s, omega_c=config.omega_c))
    a_tau = override if override is not None else config.a_tau
    return ColoredNoiseDephasingFamily(ColoredNoiseParams(a=a_tau, tau=1.0))


def _config_echo(config: RunConfig) -> dict:
    echo = {
        "command": config.command,
        "family": config.family,
        "horizon": _round12(config.horizon),
        "steps": config.steps,
        "format": config.fmt,
    }
    if config.family == FAMILY_OHMIC:
        echo["s"] = _round12(config.s)
        echo["omega_c"] = _round12(config.omega_c)
    else:
        echo["a_tau"] = _round12(config.a_tau)
    if config.state is not None:
        echo["state"] = [_round12(v) for v in config.state]
    if config.optimize:
        echo["state"] = "optimize"
    if config.sweep is not None:
        param, lo, hi, count = config.sweep
        echo["sweep"] = {"param": param, "lo": _round12(lo), "hi": _round12(hi), "n": count}
    return echo


def _write_rows(config: RunConfig, columns: List[str], rows: List[dict]) -> None:
    if config.fmt == "csv":
        text = _rows_to_csv(columns, rows)
    else:
        payload = {
            "version": __version__,
            "config": _config_echo(config),
            "results": rows,
        }
        text = json.dumps(payload, indent=2) + "\n"
    if config.out == "-":
        sys.stdout.write(text)
    else:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    if isinstance(value, (list, tuple)):
        return ";".join(
            ":".join(fmt_float(x) for x in item) if isinstance(item, (list, tuple)) else fmt_float(item)
            for item in value
        )
    return str(value)


def _rows_to_csv(columns: List[str], rows: List[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(col)) for col in columns])
    return buf.getvalue()


def _resolve_initial_state(config: RunConfig, family) -> np.ndarray:
    if config.optimize:
        report = optimize_over_states(family, config.horizon, time_steps=config.steps)
        return np.asarray(report.argmax_bloch)
    return config.state


def cmd_trajectory(config: RunConfig) -> int:
    family = _build_family(config)
    bloch = _resolve_initial_state(config, family)
    times = np.linspace(0.0, config.horizon, config.steps)
    traj = family.trajectory(bloch, times)
    ds_dt = entropy_rate_series(traj.lambda_plus, traj.eta_plus)
    diagnostic = family.diagnostic(times)
    columns = [
        "t",
        "lambda_plus",
        "lambda_minus",
        "entropy_bits",
        "eta_plus",
        "dS_dt",
        family.diagnostic_name,
    ]
    rows = []
    for i, t in enumerate(times):
        rows.append(
            {
                "t": _round12(t),
                "lambda_plus": _round12(traj.lambda_plus[i]),
                "lambda_minus": _round12(1.0 - traj.lambda_plus[i]),
                "entropy_bits": _round12(traj.entropy[i]),
                "eta_plus": _round12(traj.eta_plus[i]),
                "dS_dt": _round12(ds_dt[i]),
                family.diagnostic_name: _round12(diagnostic[i]),
            }
        )
    _write_rows(config, columns, rows)
    return 0


def _measure_row(config: RunConfig, value: Optional[float]) -> dict:
    family = _build_family(config, override=value)
    if config.optimize:
        report = optimize_over_states(family, config.horizon, time_steps=config.steps)
        state_label = "optimize"
        argmax = report.argmax_bloch
        tie = report.tie
        n_s = report.n_s
    else:
        times = np.linspace(0.0, config.horizon, config.steps)
        traj = family.trajectory(config.state, times)
        report = n_e_from_trajectory(traj)
        n_s = n_s_from_trajectory(traj)
        state_label = ",".join(fmt_float(v) for v in config.state)
        argmax = config.state
        tie = False
    row = {
        "family": config.family,
        "horizon": _round12(config.horizon),
        "steps": config.steps,
        "state": state_label,
        "n_e": _round12(report.n_e),
        "n_s": _round12(n_s),
        "num_intervals": len(report.intervals),
        "intervals": [[_round12(a), _round12(b)] for a, b in report.intervals],
        "gains": [_round12(g) for g in report.gains],
        "argmax_x": _round12(argmax[0]),
        "argmax_y": _round12(argmax[1]),
        "argmax_z": _round12(argmax[2]),
        "tie": tie,
    }
    if config.family == FAMILY_OHMIC:
        row["s"] = _round12(value if value is not None else config.s)
        row["omega_c"] = _round12(config.omega_c)
    else:
        row["a_tau"] = _round12(value if value is not None else config.a_tau)
    return row


def cmd_measure(config: RunConfig) -> int:
    if config.sweep is None:
        rows = [_measure_row(config, None)]
    else:
        _, lo, hi, count = config.sweep
        values = np.linspace(lo, hi, count) if count > 1 else np.array([lo])
        rows = [_measure_row(config, float(v)) for v in values]
    _write_rows(config, MEASURE_COLUMNS, rows)
    return 0


def cmd_check(config: RunConfig) -> int:
    family = _build_family(config)
    times = np.linspace(0.0, config.horizon, CHECK_TIME_SAMPLES)
    min_eig = np.inf
    witness = None
    pairs_checked = 0
    singular_pairs = 0
    for i in range(len(times)):
        for j in range(i + 1, len(times)):
            try:
                amap = intermediate_map(family, float(times[i]), float(times[j]))
            except NonInvertibleMapError:
                singular_pairs += 1
                continue
            eigs = np.linalg.eigvalsh(choi_of_affine(amap))
            pairs_checked += 1
            low = float(eigs[0])
            if low < min_eig:
                min_eig = low
            if witness is None and low < CHECK_CP_TOL:
                witness = (float(times[i]), float(times[j]))
    if witness is not None:
        verdict = "non-divisible"
        exit_code = 0
    elif singular_pairs > 0:
        verdict = "indeterminate"
        exit_code = 4
    else:
        verdict = "divisible"
        exit_code = 0
    row = {
        "family": config.family,
        "horizon": _round12(config.horizon),
        "verdict": verdict,
        "min_choi_eigenvalue": _round12(min_eig) if np.isfinite(min_eig) else None,
        "witness_t1": _round12(witness[0]) if witness else None,
        "witness_t2": _round12(witness[1]) if witness else None,
        "pairs_checked": pairs_checked,
        "singular_pairs": singular_pairs,
    }
    if config.family == FAMILY_OHMIC:
        row["s"] = _round12(config.s)
        row["omega_c"] = _round12(config.omega_c)
    else:
        row["a_tau"] = _round12(config.a_tau)
    _write_rows(config, CHECK_COLUMNS, rows=[row])
    return exit_code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve_config(args)
        if config.command == "trajectory":
            return cmd_trajectory(config)
        if config.command == "measure":
            return cmd_measure(config)
        return cmd_check(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureConvergenceError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
