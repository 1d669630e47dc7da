"""Outer solve loop: quick start at the baseline radius, then repeated SED and
container adjustment until the time (or cycle) budget runs out."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .container import AdjustConfig, AdjustmentFailed, adjust_container
from .gbo import gbo_minimize
from .instance import Solution, random_layout
from .sed import SedConfig, sed

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveConfig:
    cutoff_seconds: float | None = 60.0
    sed: SedConfig = field(default_factory=SedConfig)
    adjust: AdjustConfig = field(default_factory=AdjustConfig)
    seed: int = 0
    cutoff_cycles: int | None = None
    # stop as soon as the best radius is within target_tol of this value
    target_radius: float | None = None
    target_tol: float = 1e-6

    def __post_init__(self):
        if self.cutoff_seconds is None and self.cutoff_cycles is None:
            raise ValueError("need a time or cycle cutoff")
        if self.cutoff_seconds is not None and not self.cutoff_seconds > 0:
            raise ValueError("cutoff_seconds must be positive")
        if self.cutoff_cycles is not None and self.cutoff_cycles < 0:
            raise ValueError("cutoff_cycles must be >= 0")


class NoFeasibleSolution(RuntimeError):
    pass


@dataclass
class SolveReport:
    best: Solution
    history: list[tuple[float, float]]
    runs_completed: int

    @property
    def time_to_best(self) -> float:
        return self.history[-1][0]


def solve(n: int, R_b: float, config: SolveConfig, rng: np.random.Generator | None = None) -> SolveReport:
    """One seeded run. In cycle mode (``cutoff_cycles`` set) the clock is the
    number of completed SED/adjust cycles, which makes runs replayable;
    history times are then cycle counts."""
    if n < 1 or not R_b > 0:
        raise ValueError("need n >= 1 and R_b > 0")
    rng = np.random.default_rng(config.seed) if rng is None else rng
    start = time.monotonic()
    cycle_mode = config.cutoff_cycles is not None
    deadline = None if cycle_mode else start + config.cutoff_seconds
    gbo_cfg = config.sed.gbo
    if gbo_cfg.k > n:
        gbo_cfg = replace(gbo_cfg, k=n)

    cycles = 0

    def clock() -> float:
        return float(cycles) if cycle_mode else time.monotonic() - start

    def out_of_budget() -> bool:
        if cycle_mode:
            return cycles >= config.cutoff_cycles
        return time.monotonic() >= deadline

    def hit_target(sol) -> bool:
        return config.target_radius is not None and sol.radius <= config.target_radius + config.target_tol

    best = None
    while best is None:
        x = gbo_minimize(random_layout(n, R_b, rng), R_b, gbo_cfg, rng)
        try:
            best = adjust_container(x, R_b, config.adjust)
        except AdjustmentFailed:
            log.info("initial adjustment infeasible, restarting")
            if cycle_mode:
                cycles += 1
            if out_of_budget():
                raise NoFeasibleSolution(f"no feasible layout for n={n} within budget") from None
    history = [(clock(), best.radius)]
    log.info("n=%d initial radius %.12f", n, best.radius)

    while not out_of_budget() and not hit_target(best):
        R = min(R_b, best.radius)
        x = sed(n, R, config.sed, rng, deadline)
        cycles += 1
        try:
            cand = adjust_container(x, R, config.adjust)
        except AdjustmentFailed:
            continue
        if cand.radius < best.radius:
            best = cand
            history.append((clock(), best.radius))
            log.info("n=%d improved radius %.12f at %.3f", n, best.radius, history[-1][0])
    return SolveReport(best, history, cycles)
