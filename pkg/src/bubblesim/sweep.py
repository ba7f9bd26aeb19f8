"""One-parameter-at-a-time experiments over matched-seed ensembles.

A sweep varies a single scalar parameter over an ordered list of values and
runs the same list of seeds at every value.  Matching the seeds across values
makes comparisons paired: cell (value_i, seed_s) and cell (value_j, seed_s)
differ only in the parameter, never in the noise realization.

Per value the ensemble is reduced to the median and interquartile range of
each summary field.  Medians, not means: peak log-prices are heavy-tailed
across seeds, and the claims a sweep supports are qualitative orderings.

One caveat worth knowing before trusting an ordering: whether the crash-prone
regime peaks at an intermediate return-memory r at the MEDIAN level is
seed-set dependent in our experience, even where individual paths show a
clear interior maximum.  The test suite checks that ordering explicitly and
reports a measured deviation rather than hiding it.

Cells are independent pure function evaluations, so run_sweep can fan them
out to worker processes; results are collected by cell index and the output
is bit-identical whether run serially or in parallel.  A cell whose derived
parameters are invalid (say a swept b landing above c) records an error
string and the sweep continues; only a sweep with no surviving cell raises.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .analysis import CrashConfig, SummaryStats, summarize
from .model import simulate
from .params import PARAM_FIELDS, ModelParams

STAT_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(SummaryStats))

# accepted spellings for CLI-facing axis names
_AXIS_ALIASES = {"lambda": "Lambda"}


def canonical_axis(axis: str) -> str:
    """Map an axis name to the matching parameter field, case-tolerantly."""
    if not isinstance(axis, str):
        raise ValueError(f"sweep axis must be a string (got {axis!r})")
    name = _AXIS_ALIASES.get(axis.lower(), axis)
    if name in PARAM_FIELDS:
        return name
    lowered = {f.lower(): f for f in PARAM_FIELDS}
    if name.lower() in lowered:
        return lowered[name.lower()]
    raise ValueError(
        f"unknown sweep axis {axis!r}; expected one of {', '.join(PARAM_FIELDS)}"
    )


@dataclass(frozen=True)
class SweepSpec:
    """Definition of one sweep: base parameters, axis, values, matched seeds."""

    base: ModelParams
    axis: str
    values: tuple[float, ...]
    seeds: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis", canonical_axis(self.axis))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        if not self.values:
            raise ValueError("SweepSpec requires a non-empty values list")
        if any(not math.isfinite(v) for v in self.values):
            raise ValueError(f"SweepSpec requires finite values (got {self.values})")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"SweepSpec requires strictly increasing values (got {self.values})")
        if not self.seeds:
            raise ValueError("SweepSpec requires a non-empty seeds list")
        for s in self.seeds:
            if not 0 <= s < 2**64:
                raise ValueError(f"SweepSpec requires seeds in [0, 2**64) (got {s})")


@dataclass(frozen=True)
class SweepCell:
    """Outcome of one (value, seed) evaluation: stats, or an error string."""

    value: float
    seed: int
    stats: SummaryStats | None
    error: str | None


@dataclass(frozen=True)
class ValueSummary:
    """Median and IQR of every summary field across the seeds at one value.

    Fields whose per-seed value can be absent (inter-crash interval) are
    aggregated over the seeds where they exist, and are None when they exist
    nowhere.  n_failed counts cells that errored at this value.
    """

    value: float
    n_seeds: int
    n_failed: int
    median: dict[str, float | None]
    iqr: dict[str, float | None]


@dataclass(frozen=True)
class SweepResult:
    """Full sweep output: the |values| x |seeds| cell grid plus per-value
    aggregates, cells ordered values-major then seeds-minor."""

    spec: SweepSpec
    cells: tuple[SweepCell, ...]
    summaries: tuple[ValueSummary, ...]

    def cell(self, value_index: int, seed_index: int) -> SweepCell:
        return self.cells[value_index * len(self.spec.seeds) + seed_index]


def _run_cell(task: tuple[ModelParams, str, float, int, CrashConfig | None]) -> SweepCell:
    """Evaluate one grid cell; module-level so worker processes can pickle it."""
    base, axis, value, seed, cfg = task
    try:
        params = base.with_value(axis, value)
        stats = summarize(simulate(params, seed), cfg)
        return SweepCell(value=value, seed=seed, stats=stats, error=None)
    except Exception as exc:
        return SweepCell(value=value, seed=seed, stats=None, error=f"{type(exc).__name__}: {exc}")


def _aggregate(value: float, cells: list[SweepCell]) -> ValueSummary:
    median: dict[str, float | None] = {}
    iqr: dict[str, float | None] = {}
    for name in STAT_FIELDS:
        vals = [
            getattr(c.stats, name)
            for c in cells
            if c.stats is not None and getattr(c.stats, name) is not None
        ]
        if vals:
            arr = np.asarray(vals, dtype=float)
            median[name] = float(np.median(arr))
            iqr[name] = float(np.percentile(arr, 75) - np.percentile(arr, 25))
        else:
            median[name] = None
            iqr[name] = None
    return ValueSummary(
        value=value,
        n_seeds=len(cells),
        n_failed=sum(1 for c in cells if c.error is not None),
        median=median,
        iqr=iqr,
    )


def run_sweep(
    spec: SweepSpec,
    cfg: CrashConfig | None = None,
    n_jobs: int = 1,
) -> SweepResult:
    """Evaluate the full (value, seed) grid and aggregate per value.

    With cfg=None each cell derives its detector from its own parameters, so
    the crossing threshold tracks a swept b.  n_jobs > 1 fans cells out to
    that many worker processes; the grid ordering (values-major, seeds-minor)
    and every number in the result are independent of the execution mode.

    A cell that fails (invalid derived parameters, say) is recorded with its
    error and excluded from the aggregates.  If every cell fails, raises
    RuntimeError carrying the first error.
    """
    if not isinstance(n_jobs, int) or isinstance(n_jobs, bool) or n_jobs < 1:
        raise ValueError(f"run_sweep requires integer n_jobs >= 1 (got {n_jobs!r})")
    tasks = [
        (spec.base, spec.axis, value, seed, cfg)
        for value in spec.values
        for seed in spec.seeds
    ]
    if n_jobs == 1:
        cells = [_run_cell(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (4 * n_jobs))
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            cells = list(pool.map(_run_cell, tasks, chunksize=chunk))
    if all(c.error is not None for c in cells):
        raise RuntimeError(f"every sweep cell failed; first error: {cells[0].error}")
    n_seeds = len(spec.seeds)
    summaries = tuple(
        _aggregate(value, cells[i * n_seeds : (i + 1) * n_seeds])
        for i, value in enumerate(spec.values)
    )
    return SweepResult(spec=spec, cells=tuple(cells), summaries=summaries)


def compare_medians(result: SweepResult, field: str) -> list[tuple[float, float | None]]:
    """(value, median-of-field) pairs in the sweep's value order."""
    if field not in STAT_FIELDS:
        raise ValueError(f"unknown summary field {field!r}; expected one of {', '.join(STAT_FIELDS)}")
    return [(s.value, s.median[field]) for s in result.summaries]
