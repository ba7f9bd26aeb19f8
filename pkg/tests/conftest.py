"""Shared fixtures: the expensive matched-seed ensembles are session-scoped
so the qualitative-ordering tests and the regression guards reuse one run."""

from __future__ import annotations

import pytest

from bubblesim import ModelParams, SweepSpec, run_sweep, simulate, up_crossings

FIFTY_SEEDS = tuple(range(50))


@pytest.fixture(scope="session")
def baseline() -> ModelParams:
    return ModelParams()


@pytest.fixture(scope="session")
def b_sweep_50(baseline):
    return run_sweep(SweepSpec(base=baseline, axis="b", values=(0.0001, 0.01, 0.02), seeds=FIFTY_SEEDS))


@pytest.fixture(scope="session")
def r_sweep_50(baseline):
    return run_sweep(SweepSpec(base=baseline, axis="r", values=(0.0005, 0.001, 0.005), seeds=FIFTY_SEEDS))


@pytest.fixture(scope="session")
def lambda_sweep_50(baseline):
    return run_sweep(SweepSpec(base=baseline, axis="lambda", values=(-2.5, -2.0, -1.5), seeds=FIFTY_SEEDS))


@pytest.fixture(scope="session")
def baseline_crossing_count(baseline) -> int:
    """How many of the seeds 0..99 produce at least one momentum up-crossing."""
    return sum(
        1
        for seed in range(100)
        if len(up_crossings(simulate(baseline, seed).momentum, baseline.b)) >= 1
    )
