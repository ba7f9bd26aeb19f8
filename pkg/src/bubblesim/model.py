"""Core dynamics: momentum, trade arrivals, cubic direction pressure, tick prices.

The market state is driven by a single quantity, the momentum M_t: an
exponentially weighted moving average of past log-returns,

    M_t = sum_{s=1..t-1} exp(-r (t - s)) * (log P_s - log P_{s-1}),

maintained incrementally as M_t = exp(-r) * (M_{t-1} + last_return).  Momentum
feeds two channels:

  * trade arrivals -- a trade fires with probability Phi(Lambda + k M_t),
    so rising momentum raises liquidity (the "frenzy" channel);
  * direction pressure -- the state x_t accumulates a cubic increment
    h (M_t - a)(M_t - b)(M_t - c), positive for M_t inside (a, b)
    (trend following) and negative inside (b, c) (panic selling once
    momentum overheats past b).  A trade is an up-tick with probability
    Phi(x_t).

Prices live on a lattice: each trade moves the log-price by exactly one tick
d, up or down.  Internally the tick count is an integer, so every log-price
is log_p0 + d*j exactly, with no float drift over long runs.

Update order within one period t (fixed contract, two RNG draws per period,
always both, so RNG consumption is path-independent):

    1. M_t      from the previous period's return
    2. lambda_t = Lambda + k M_t
    3. dN_t     ~ Bernoulli(Phi(lambda_t))      [draw 1]
    4. x_t      = x_{t-1} + h (M_t-a)(M_t-b)(M_t-c)
    5. Z_t      ~ Bernoulli(Phi(x_t))           [draw 2, drawn even if dN_t=0]
    6. log P_t  = log P_{t-1} + d (2 Z_t - 1) dN_t

Periods t=0 and t=1 are initial conditions (log P_0 = log P_1 = log_p0,
x_0 = x_1 = x0, M_1 = 0, N_1 = 0); the dynamics run for t = 2..T, so a full
simulation covers T+1 periods and consumes exactly 2*(T-1) uniforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .params import ModelParams
from .rng import RngStream

_SQRT2 = math.sqrt(2.0)


def normal_cdf(z: float) -> float:
    """Standard normal CDF Phi(z), accurate to a few ulp over the real line."""
    if not math.isfinite(z):
        raise ValueError(f"normal_cdf requires a finite argument (got {z!r})")
    return 0.5 * math.erfc(-z / _SQRT2)


def momentum_direct(returns: Sequence[float], r: float) -> float:
    """Momentum as the explicit weighted sum over a full return history.

    ``returns[i]`` is the log-return of period i+1; the most recent return
    gets weight exp(-r), the one before it exp(-2r), and so on.  O(n) per
    call, so O(T^2) along a trajectory -- this is the reference form that the
    incremental update is checked against, not the one used in simulation.
    """
    if r <= 0:
        raise ValueError(f"momentum_direct requires r > 0 (got r={r})")
    arr = np.asarray(returns, dtype=float)
    if arr.size == 0:
        return 0.0
    if not np.all(np.isfinite(arr)):
        raise ValueError("momentum_direct requires finite returns")
    weights = np.exp(-r * np.arange(arr.size, 0, -1, dtype=float))
    return float(weights @ arr)


def momentum_update(m_prev: float, last_return: float, r: float) -> float:
    """One incremental momentum step: exp(-r) * (m_prev + last_return)."""
    if r <= 0:
        raise ValueError(f"momentum_update requires r > 0 (got r={r})")
    return math.exp(-r) * (m_prev + last_return)


def intensity(params: ModelParams, m: float) -> float:
    """Trading intensity Lambda + k*m; any real, squashed by Phi before use."""
    return params.Lambda + params.k * m


def cubic_increment(params: ModelParams, m: float) -> float:
    """Direction-pressure increment h (m-a)(m-b)(m-c).

    Positive for m strictly inside (a, b), negative strictly inside (b, c):
    crossing the middle root b flips accumulation into selling pressure.
    Exactly zero at the roots.
    """
    return params.h * (m - params.a) * (m - params.b) * (m - params.c)


def bernoulli(p: float, rng: RngStream) -> int:
    """One Bernoulli(p) draw: consumes exactly one uniform, returns 0 or 1."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"bernoulli requires p in [0, 1] (got p={p!r})")
    return 1 if rng.uniform() < p else 0


@dataclass(frozen=True, slots=True)
class SimState:
    """Evolving simulation state after period t."""

    t: int
    log_price: float
    prev_log_price: float
    momentum: float
    x: float
    n_trades: int
    ticks: int  # integer tick offset from log_p0; log_price == log_p0 + d*ticks


@dataclass(frozen=True, slots=True)
class StepRecord:
    """Observables of one period: one row of a trajectory."""

    t: int
    log_price: float
    momentum: float
    lam: float
    x: float
    trade: int
    direction: int
    n_trades: int


def initial_state(params: ModelParams) -> SimState:
    """State after the initial conditions, i.e. at the end of period t=1."""
    return SimState(
        t=1,
        log_price=params.log_p0,
        prev_log_price=params.log_p0,
        momentum=0.0,
        x=params.x0,
        n_trades=0,
        ticks=0,
    )


def step(params: ModelParams, state: SimState, rng: RngStream) -> tuple[SimState, StepRecord]:
    """Advance one period, consuming exactly two uniform draws.

    Follows the fixed update order documented at module level.  The direction
    draw happens unconditionally, even on no-trade periods, which keeps the
    RNG stream aligned across parameter changes.
    """
    if state.t < 1:
        raise ValueError(f"step requires state.t >= 1 (got t={state.t})")
    m = momentum_update(state.momentum, state.log_price - state.prev_log_price, params.r)
    lam = intensity(params, m)
    traded = bernoulli(normal_cdf(lam), rng)
    x = state.x + cubic_increment(params, m)
    z = bernoulli(normal_cdf(x), rng)
    ticks = state.ticks + (2 * z - 1) * traded
    log_price = params.log_p0 + params.d * ticks
    new_state = SimState(
        t=state.t + 1,
        log_price=log_price,
        prev_log_price=state.log_price,
        momentum=m,
        x=x,
        n_trades=state.n_trades + traded,
        ticks=ticks,
    )
    record = StepRecord(
        t=new_state.t,
        log_price=log_price,
        momentum=m,
        lam=lam,
        x=x,
        trade=traded,
        direction=z,
        n_trades=new_state.n_trades,
    )
    return new_state, record


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Full simulation output: per-period columns for t = 0..T.

    Columns are numpy arrays of length T+1 (two initial periods plus T-1
    dynamic ones).  ``record(t)`` and ``records`` expose row views.
    """

    params: ModelParams
    seed: int
    t: np.ndarray
    log_price: np.ndarray
    momentum: np.ndarray
    lam: np.ndarray
    x: np.ndarray
    trade: np.ndarray
    direction: np.ndarray
    n_trades: np.ndarray
    n_rng_draws: int

    def __len__(self) -> int:
        return len(self.t)

    def record(self, i: int) -> StepRecord:
        return StepRecord(
            t=int(self.t[i]),
            log_price=float(self.log_price[i]),
            momentum=float(self.momentum[i]),
            lam=float(self.lam[i]),
            x=float(self.x[i]),
            trade=int(self.trade[i]),
            direction=int(self.direction[i]),
            n_trades=int(self.n_trades[i]),
        )

    @property
    def records(self) -> list[StepRecord]:
        return [self.record(i) for i in range(len(self))]

    @classmethod
    def from_records(
        cls,
        params: ModelParams,
        seed: int,
        records: Iterable[StepRecord],
        n_rng_draws: int = 0,
    ) -> "Trajectory":
        """Pack an explicit record sequence into columns (used for fixtures)."""
        rows = list(records)
        if not rows:
            raise ValueError("Trajectory.from_records requires at least one record")
        return cls(
            params=params,
            seed=seed,
            t=np.array([rec.t for rec in rows], dtype=np.int64),
            log_price=np.array([rec.log_price for rec in rows], dtype=float),
            momentum=np.array([rec.momentum for rec in rows], dtype=float),
            lam=np.array([rec.lam for rec in rows], dtype=float),
            x=np.array([rec.x for rec in rows], dtype=float),
            trade=np.array([rec.trade for rec in rows], dtype=np.int64),
            direction=np.array([rec.direction for rec in rows], dtype=np.int64),
            n_trades=np.array([rec.n_trades for rec in rows], dtype=np.int64),
            n_rng_draws=n_rng_draws,
        )


def simulate(params: ModelParams, seed: int) -> Trajectory:
    """Run the full model for periods 0..T as a pure function of (params, seed).

    Identical inputs give bit-identical trajectories.  Consumes exactly
    2*(T-1) uniforms regardless of the realized path.
    """
    rng = RngStream(seed)
    state = initial_state(params)

    lam0 = intensity(params, 0.0)
    log_price = [params.log_p0, params.log_p0]
    momentum = [0.0, 0.0]
    lam = [lam0, lam0]
    x = [params.x0, params.x0]
    trade = [0, 0]
    direction = [0, 0]
    n_trades = [0, 0]

    for _ in range(params.T - 1):
        state, rec = step(params, state, rng)
        log_price.append(rec.log_price)
        momentum.append(rec.momentum)
        lam.append(rec.lam)
        x.append(rec.x)
        trade.append(rec.trade)
        direction.append(rec.direction)
        n_trades.append(rec.n_trades)

    return Trajectory(
        params=params,
        seed=seed,
        t=np.arange(params.T + 1, dtype=np.int64),
        log_price=np.array(log_price, dtype=float),
        momentum=np.array(momentum, dtype=float),
        lam=np.array(lam, dtype=float),
        x=np.array(x, dtype=float),
        trade=np.array(trade, dtype=np.int64),
        direction=np.array(direction, dtype=np.int64),
        n_trades=np.array(n_trades, dtype=np.int64),
        n_rng_draws=rng.n_draws,
    )
