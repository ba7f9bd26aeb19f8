"""Trajectory CSV and summary JSON serialization.

CSV carries the per-period trajectory columns (streamable, diffable); JSON
carries scalar summaries and nested sweep grids.  Both are written with
explicit "\\n" newlines and UTF-8 so that a fixed (config, seed) pair yields
byte-identical files on every platform.

Reals are serialized with 17 significant digits, which round-trips every
IEEE-754 double exactly: reading a file back reproduces the in-memory values
bit for bit.  Every JSON summary embeds the complete effective configuration
(parameters plus detector), the seed or seed list, and the artifact version,
so any output file is sufficient to re-run its simulation identically.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from os import PathLike
from pathlib import Path

import numpy as np

from .analysis import CrashConfig, SummaryStats
from .model import Trajectory
from .params import ModelParams
from .sweep import SweepResult

ARTIFACT_VERSION = "0.1.0"

CSV_HEADER = "t,log_price,momentum,lambda,x,trade,direction,n_trades"

_INT_COLUMNS = frozenset({"t", "trade", "direction", "n_trades"})

# Trajectory attribute behind each CSV column ("lambda" is a Python keyword)
_COLUMN_ATTRS = {
    "t": "t",
    "log_price": "log_price",
    "momentum": "momentum",
    "lambda": "lam",
    "x": "x",
    "trade": "trade",
    "direction": "direction",
    "n_trades": "n_trades",
}


def _fmt_real(x: float) -> str:
    return format(x, ".17g")


def write_trajectory_csv(traj: Trajectory, path: str | PathLike[str]) -> None:
    """Write one row per period, t ascending, under the fixed header."""
    names = CSV_HEADER.split(",")
    columns = [traj_column(traj, name) for name in names]
    lines = [CSV_HEADER]
    for i in range(len(traj)):
        parts = []
        for name, col in zip(names, columns):
            if name in _INT_COLUMNS:
                parts.append(str(int(col[i])))
            else:
                parts.append(_fmt_real(float(col[i])))
        lines.append(",".join(parts))
    _write_text(path, "\n".join(lines) + "\n")


def traj_column(traj: Trajectory, name: str) -> np.ndarray:
    """The trajectory column behind a CSV column name."""
    try:
        return getattr(traj, _COLUMN_ATTRS[name])
    except KeyError:
        raise ValueError(f"unknown trajectory column {name!r}") from None


def read_trajectory_csv(path: str | PathLike[str]) -> dict[str, np.ndarray]:
    """Read a trajectory CSV back into {column name: array}.

    Integer columns come back as int64, reals as float64; values equal the
    originally written ones exactly.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"failed to read trajectory CSV {path}: {exc}") from exc
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != CSV_HEADER:
        got = lines[0] if lines else "<empty file>"
        raise ValueError(f"bad trajectory CSV header in {path}: {got!r}")
    names = CSV_HEADER.split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    for i, row in enumerate(rows):
        if len(row) != len(names):
            raise ValueError(f"row {i + 1} of {path} has {len(row)} fields, expected {len(names)}")
    out: dict[str, np.ndarray] = {}
    for j, name in enumerate(names):
        vals = [row[j] for row in rows]
        if name in _INT_COLUMNS:
            out[name] = np.array([int(v) for v in vals], dtype=np.int64)
        else:
            out[name] = np.array([float(v) for v in vals], dtype=float)
    return out


def _stats_dict(stats: SummaryStats) -> dict:
    return asdict(stats)


def _detector_dict(cfg: CrashConfig | None) -> dict | None:
    return None if cfg is None else asdict(cfg)


def summary_payload(
    stats: SummaryStats,
    params: ModelParams,
    seed: int,
    cfg: CrashConfig | None = None,
) -> dict:
    """JSON payload for a single run: config, seed, stats, version."""
    if cfg is None:
        cfg = CrashConfig.for_params(params)
    return {
        "config": {"params": params.as_dict(), "detector": _detector_dict(cfg)},
        "seed": int(seed),
        "stats": _stats_dict(stats),
        "version": ARTIFACT_VERSION,
    }


def sweep_payload(result: SweepResult, cfg: CrashConfig | None = None) -> dict:
    """JSON payload for a sweep: config, seed list, grid + aggregates, version.

    detector is null when no fixed detector was supplied, meaning each cell
    derived its detector from its own parameters.
    """
    spec = result.spec
    return {
        "config": {
            "params": spec.base.as_dict(),
            "detector": _detector_dict(cfg),
            "axis": spec.axis,
            "values": list(spec.values),
        },
        "seed": [int(s) for s in spec.seeds],
        "sweep": {
            "axis": spec.axis,
            "values": list(spec.values),
            "summaries": [
                {
                    "value": s.value,
                    "n_seeds": s.n_seeds,
                    "n_failed": s.n_failed,
                    "median": dict(s.median),
                    "iqr": dict(s.iqr),
                }
                for s in result.summaries
            ],
            "cells": [
                {
                    "value": c.value,
                    "seed": c.seed,
                    "stats": None if c.stats is None else _stats_dict(c.stats),
                    "error": c.error,
                }
                for c in result.cells
            ],
        },
        "version": ARTIFACT_VERSION,
    }


def write_summary_json(payload: dict, path: str | PathLike[str]) -> None:
    """Write a summary payload with sorted keys and a trailing newline."""
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_text(path: str | PathLike[str], text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"failed to write {path}: {exc}") from exc
