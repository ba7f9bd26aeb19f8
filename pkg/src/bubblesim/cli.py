"""Command-line front end: config resolution, run dispatch, file outputs.

Three subcommands, mutually exclusive by construction:

  simulate   one trajectory: trajectory.csv + summary.json (+ trajectory.svg)
  sweep      matched-seed ensemble over one parameter: sweep.json (+ sweep.svg)
  baseline   simulate with the stock parameters and every output, no overrides

Configuration is resolved in three layers: built-in defaults, then a flat
JSON config file (--config), then command-line flags; later layers win.  The
effective configuration is echoed into every JSON summary, so outputs are
self-describing.

Exit codes: 0 success; 1 for anything wrong with the inputs (bad flag, bad
config file, parameter constraint violations, a sweep with no valid cell);
2 when an output file cannot be written.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from .analysis import CrashConfig, summarize
from .model import simulate
from .params import PARAM_FIELDS, ModelParams
from .sweep import SweepSpec, compare_medians, run_sweep
from .io import summary_payload, sweep_payload, write_summary_json, write_trajectory_csv
from .svgplot import plot_sweep, plot_trajectory

_DEFAULT_SEED = 0
_DEFAULT_SEEDS = "0..49"
_DEFAULT_OUT = "out"

_DETECTOR_KEYS = ("threshold", "peak_window", "min_drawdown")
_CONFIG_KEYS = frozenset(PARAM_FIELDS) | set(_DETECTOR_KEYS) | {
    "seed",
    "seeds",
    "axis",
    "values",
    "out",
    "plot",
}


class ConfigError(Exception):
    """Anything wrong with flags or the config file; maps to exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run description, after defaults, file, and flags."""

    mode: str  # "simulate" or "sweep"
    params: ModelParams
    seed: int
    seeds: tuple[int, ...]
    crash: CrashConfig | None  # None: derive from each run's own params
    out: Path
    plot: bool
    axis: str | None
    values: tuple[float, ...] | None


def parse_seed_range(text: str) -> tuple[int, ...]:
    """Parse an inclusive seed range "A..B" into (A, ..., B)."""
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text.strip())
    if not m:
        raise ConfigError(f"seeds must look like A..B (got {text!r})")
    a, b = int(m.group(1)), int(m.group(2))
    if a > b:
        raise ConfigError(f"seed range must have A <= B (got {text!r})")
    return tuple(range(a, b + 1))


def parse_value_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError:
        raise ConfigError(f"values must be a comma-separated list of reals (got {text!r})") from None


def _load_config_file(path: str) -> dict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    return data


def _resolve_seeds(flag: str | None, filed) -> tuple[int, ...]:
    if flag is not None:
        return parse_seed_range(flag)
    if filed is None:
        return parse_seed_range(_DEFAULT_SEEDS)
    if isinstance(filed, str):
        return parse_seed_range(filed)
    if isinstance(filed, list) and all(isinstance(s, int) for s in filed):
        return tuple(filed)
    raise ConfigError(f"config seeds must be \"A..B\" or a list of integers (got {filed!r})")


def parse_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config file, and flags into one RunConfig.

    Flags always win over the file; omitted settings take the stock values.
    Parameter constraint violations surface with the violated constraint in
    the message.
    """
    filed = _load_config_file(args.config) if getattr(args, "config", None) else {}

    overrides = {}
    for name in PARAM_FIELDS:
        flag_val = getattr(args, name, None)
        if flag_val is not None:
            overrides[name] = flag_val
        elif name in filed:
            overrides[name] = filed[name]
    try:
        params = ModelParams(**overrides)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    crash: CrashConfig | None = None
    det = {k: filed[k] for k in _DETECTOR_KEYS if k in filed}
    for k in _DETECTOR_KEYS:
        flag_val = getattr(args, k, None)
        if flag_val is not None:
            det[k] = flag_val
    if det:
        base = CrashConfig.for_params(params)
        try:
            crash = CrashConfig(
                threshold=float(det.get("threshold", base.threshold)),
                peak_window=int(det.get("peak_window", base.peak_window)),
                min_drawdown=float(det.get("min_drawdown", base.min_drawdown)),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    seed_val = args.seed if getattr(args, "seed", None) is not None else filed.get("seed", _DEFAULT_SEED)
    if not isinstance(seed_val, int) or isinstance(seed_val, bool):
        raise ConfigError(f"seed must be an integer (got {seed_val!r})")

    axis = getattr(args, "axis", None) or filed.get("axis")
    values_flag = getattr(args, "values", None)
    if values_flag is not None:
        values: tuple[float, ...] | None = parse_value_list(values_flag)
    elif "values" in filed:
        v = filed["values"]
        if not isinstance(v, list):
            raise ConfigError(f"config values must be a list of reals (got {v!r})")
        values = tuple(float(x) for x in v)
    else:
        values = None

    out_val = getattr(args, "out", None) or filed.get("out") or _DEFAULT_OUT
    plot_flag = getattr(args, "plot", None)
    if plot_flag is not None:
        plot = bool(plot_flag)
    else:
        plot = bool(filed.get("plot", True))

    return RunConfig(
        mode=args.mode,
        params=params,
        seed=seed_val,
        seeds=_resolve_seeds(getattr(args, "seeds", None), filed.get("seeds")),
        crash=crash,
        out=Path(out_val),
        plot=plot,
        axis=axis,
        values=values,
    )


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    for f in fields(ModelParams):
        kind = int if f.type in ("int", int) else float
        names = [f"--{f.name}"]
        if f.name == "Lambda":
            names.append("--lambda")
        parser.add_argument(*names, dest=f.name, type=kind, default=None, metavar="V",
                            help=f"override parameter {f.name} (default {f.default})")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="flat JSON config file")
    parser.add_argument("--out", metavar="DIR", default=None, help=f"output directory (default {_DEFAULT_OUT!r})")
    parser.add_argument("--plot", action=argparse.BooleanOptionalAction, default=None,
                        help="emit SVG plot(s) (default: on)")
    parser.add_argument("--threshold", type=float, default=None, metavar="V",
                        help="crash detector crossing threshold (default: parameter b)")
    parser.add_argument("--peak-window", dest="peak_window", type=int, default=None, metavar="N",
                        help="crash detector peak search window (default 500)")
    parser.add_argument("--min-drawdown", dest="min_drawdown", type=float, default=None, metavar="V",
                        help="crash detector drawdown floor (default 5*d)")
    _add_param_flags(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bubblesim",
        description="Simulate momentum-driven bubble/crash market dynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one trajectory and write CSV/JSON/SVG")
    p_sim.add_argument("--seed", type=int, default=None, metavar="N", help="RNG seed (default 0)")
    _add_common_flags(p_sim)
    p_sim.set_defaults(mode="simulate")

    p_sweep = sub.add_parser("sweep", help="run a one-parameter matched-seed ensemble")
    p_sweep.add_argument("--axis", metavar="NAME", default=None,
                         help="parameter to vary: b, r, lambda (any parameter name works)")
    p_sweep.add_argument("--values", metavar="LIST", default=None,
                         help="comma-separated, strictly increasing values")
    p_sweep.add_argument("--seeds", metavar="A..B", default=None,
                         help=f"inclusive seed range (default {_DEFAULT_SEEDS})")
    _add_common_flags(p_sweep)
    p_sweep.set_defaults(mode="sweep")

    p_base = sub.add_parser("baseline", help="simulate with stock parameters, all outputs")
    p_base.add_argument("--seed", type=int, default=None, metavar="N", help="RNG seed (default 0)")
    p_base.add_argument("--out", metavar="DIR", default=None, help=f"output directory (default {_DEFAULT_OUT!r})")
    p_base.set_defaults(mode="simulate")

    return parser


def _ensure_out(cfg: RunConfig) -> None:
    try:
        cfg.out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {cfg.out}: {exc}") from exc


def _run_simulate(cfg: RunConfig) -> None:
    traj = simulate(cfg.params, cfg.seed)
    crash = cfg.crash if cfg.crash is not None else CrashConfig.for_params(cfg.params)
    stats = summarize(traj, crash)
    _ensure_out(cfg)
    csv_path = cfg.out / "trajectory.csv"
    json_path = cfg.out / "summary.json"
    write_trajectory_csv(traj, csv_path)
    write_summary_json(summary_payload(stats, cfg.params, cfg.seed, crash), json_path)
    written = [csv_path, json_path]
    if cfg.plot:
        svg_path = cfg.out / "trajectory.svg"
        plot_trajectory(traj, svg_path)
        written.append(svg_path)
    for p in written:
        print(f"wrote {p}")


def _run_sweep_cmd(cfg: RunConfig) -> None:
    if cfg.axis is None:
        raise ConfigError("sweep requires --axis (or an axis entry in the config file)")
    if cfg.values is None:
        raise ConfigError("sweep requires --values (or a values entry in the config file)")
    try:
        spec = SweepSpec(base=cfg.params, axis=cfg.axis, values=cfg.values, seeds=cfg.seeds)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        result = run_sweep(spec, cfg.crash)
    except RuntimeError as exc:
        raise ConfigError(str(exc)) from exc
    _ensure_out(cfg)
    json_path = cfg.out / "sweep.json"
    write_summary_json(sweep_payload(result, cfg.crash), json_path)
    written = [json_path]
    if cfg.plot:
        svg_path = cfg.out / "sweep.svg"
        plot_sweep(result, svg_path)
        written.append(svg_path)
    for axis_value, med in compare_medians(result, "peak_log_price"):
        print(f"{spec.axis}={axis_value:g}: median peak_log_price={med}")
    for p in written:
        print(f"wrote {p}")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI; returns the process exit code instead of raising."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors; usage errors are
        # configuration errors in our codes
        return 0 if exc.code in (0, None) else 1
    try:
        cfg = parse_config(args)
        if cfg.mode == "sweep":
            _run_sweep_cmd(cfg)
        else:
            _run_simulate(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry_point() -> None:
    sys.exit(main())
