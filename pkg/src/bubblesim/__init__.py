"""Deterministic simulator of momentum-driven market bubbles and crashes.

The model couples three pieces: an exponentially weighted momentum of past
log-returns, a Bernoulli trade-arrival channel whose intensity rises with
momentum, and a cubic direction-pressure state that turns moderate momentum
into trend following and overheated momentum into selling.  Prices move on
a fixed tick lattice, one tick per trade.

Everything downstream of a (parameters, seed) pair is reproducible bit for
bit: trajectories, crash detections, sweep ensembles, and the CSV/JSON/SVG
artifacts the CLI writes.
"""

from .analysis import (
    CrashConfig,
    CrashEvent,
    SummaryStats,
    detect_crashes,
    summarize,
    up_crossings,
)
from .io import (
    ARTIFACT_VERSION,
    CSV_HEADER,
    read_trajectory_csv,
    summary_payload,
    sweep_payload,
    write_summary_json,
    write_trajectory_csv,
)
from .model import (
    SimState,
    StepRecord,
    Trajectory,
    bernoulli,
    cubic_increment,
    initial_state,
    intensity,
    momentum_direct,
    momentum_update,
    normal_cdf,
    simulate,
    step,
)
from .params import BASELINE, PARAM_FIELDS, ModelParams
from .rng import RngStream
from .svgplot import plot_sweep, plot_trajectory
from .sweep import (
    STAT_FIELDS,
    SweepCell,
    SweepResult,
    SweepSpec,
    ValueSummary,
    canonical_axis,
    compare_medians,
    run_sweep,
)

__version__ = ARTIFACT_VERSION

__all__ = [
    "ARTIFACT_VERSION",
    "BASELINE",
    "CSV_HEADER",
    "CrashConfig",
    "CrashEvent",
    "ModelParams",
    "PARAM_FIELDS",
    "RngStream",
    "STAT_FIELDS",
    "SimState",
    "StepRecord",
    "SummaryStats",
    "SweepCell",
    "SweepResult",
    "SweepSpec",
    "Trajectory",
    "ValueSummary",
    "bernoulli",
    "canonical_axis",
    "compare_medians",
    "cubic_increment",
    "detect_crashes",
    "initial_state",
    "intensity",
    "momentum_direct",
    "momentum_update",
    "normal_cdf",
    "plot_sweep",
    "plot_trajectory",
    "read_trajectory_csv",
    "run_sweep",
    "simulate",
    "step",
    "summarize",
    "summary_payload",
    "sweep_payload",
    "up_crossings",
    "write_summary_json",
    "write_trajectory_csv",
]
