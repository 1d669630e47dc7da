import math
import time

import numpy as np
import pytest

from pecc.framework import NoFeasibleSolution, SolveConfig, solve
from pecc.gbo import GboConfig
from pecc.instance import check_feasibility
from pecc.sed import SedConfig

R3 = 1 + 2 / math.sqrt(3)


def test_three_circles():
    rep = solve(3, 2.2, SolveConfig(cutoff_seconds=30, target_radius=R3), np.random.default_rng(0))
    assert rep.best.radius <= R3 + 1e-6


def test_two_circles():
    rep = solve(2, 2.5, SolveConfig(cutoff_seconds=10, target_radius=2.0), np.random.default_rng(1))
    assert abs(rep.best.radius - 2.0) <= 1e-6


def test_history_monotone_and_feasible():
    cfg = SolveConfig(cutoff_seconds=None, cutoff_cycles=6, sed=SedConfig(s_iter=4, gbo=GboConfig(k=2)))
    rep = solve(9, 3.7, cfg, np.random.default_rng(2))
    radii = [r for _, r in rep.history]
    assert all(b < a for a, b in zip(radii, radii[1:]))
    assert rep.best.radius == radii[-1]
    assert check_feasibility(rep.best.layout, rep.best.radius, 1e-9).feasible
    assert rep.runs_completed == 6


def test_cycle_mode_is_deterministic():
    cfg = SolveConfig(cutoff_seconds=None, cutoff_cycles=3, sed=SedConfig(s_iter=3, gbo=GboConfig(k=3)))
    a = solve(8, 3.5, cfg, np.random.default_rng(7))
    b = solve(8, 3.5, cfg, np.random.default_rng(7))
    assert np.array_equal(a.best.layout, b.best.layout) and a.history == b.history


def test_cutoff_respected():
    cfg = SolveConfig(cutoff_seconds=1.0, sed=SedConfig(gbo=GboConfig(k=3)))
    t0 = time.monotonic()
    solve(30, 5.0, cfg, np.random.default_rng(0))
    # one in-flight GBO call plus an adjustment may finish after the cutoff
    assert time.monotonic() - t0 < 3.0


def test_target_stops_early():
    cfg = SolveConfig(cutoff_seconds=60, target_radius=10.0)
    t0 = time.monotonic()
    rep = solve(4, 3.0, cfg, np.random.default_rng(0))
    assert rep.runs_completed == 0 and time.monotonic() - t0 < 5


def test_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(cutoff_seconds=None)
    with pytest.raises(ValueError):
        SolveConfig(cutoff_seconds=-1)
    with pytest.raises(ValueError):
        solve(0, 2.0, SolveConfig())


def test_zero_cycle_budget_still_returns_quick_start():
    cfg = SolveConfig(cutoff_seconds=None, cutoff_cycles=0)
    rep = solve(5, 2.8, cfg, np.random.default_rng(0))
    assert rep.runs_completed == 0 and len(rep.history) == 1


def test_no_feasible_solution(monkeypatch):
    import pecc.framework as fw
    from pecc.container import AdjustmentFailed

    def fail(x, R, cfg):
        raise AdjustmentFailed(None, check_feasibility([0, 0, 0, 0], 1.0))

    monkeypatch.setattr(fw, "adjust_container", fail)
    with pytest.raises(NoFeasibleSolution):
        solve(2, 2.0, SolveConfig(cutoff_seconds=None, cutoff_cycles=2), np.random.default_rng(0))
