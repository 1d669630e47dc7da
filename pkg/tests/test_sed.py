import math
import time

import numpy as np
import pytest

from pecc.gbo import GboConfig
from pecc.sed import SedConfig, j_metric, perturb, sed, sed_run, select, softmax_weights
from pecc.energy import total_energy


def test_j_metric():
    assert j_metric(1e-3) == 3
    assert j_metric(0.5) == 1
    assert j_metric(2.0) == 0
    assert j_metric(1e-26) == 26
    with pytest.raises(ValueError):
        j_metric(0.0)


def test_perturb():
    x = np.linspace(-2, 2, 10)
    assert np.array_equal(perturb(x, 1e-300, np.random.default_rng(0)), x)
    y = perturb(x, 0.8, np.random.default_rng(1))
    assert np.all(np.abs(y - x) < 0.8) and not np.array_equal(x, y)
    assert np.array_equal(y, perturb(x, 0.8, np.random.default_rng(1)))


def test_select_strict_improvement():
    rng = np.random.default_rng(0)
    assert all(select(["a", "b"], [0.5, 0.01], 0.2, rng) == 1 for _ in range(100))


def freq(energies, current, draws=100_000, seed=0):
    rng = np.random.default_rng(seed)
    picks = [select([0, 1], energies, current, rng) for _ in range(draws)]
    return np.bincount(picks, minlength=2) / draws


def test_select_uniform_when_j_ties():
    assert abs(freq([0.5, 0.7], 0.2)[0] - 0.5) <= 0.01


def test_select_softmax_weights():
    p = math.e**3 / (math.e**3 + math.e)
    assert softmax_weights([1e-3, 0.5]) == pytest.approx([p, 1 - p], abs=1e-15)
    assert abs(freq([1e-3, 0.5], 1e-4)[0] - p) <= 0.01


def test_softmax_sums_to_one():
    w = softmax_weights([1e-30, 1e-3, 0.5, 7.0])
    assert abs(w.sum() - 1) <= 1e-12 and np.all(w > 0)


def test_select_validation():
    with pytest.raises(ValueError):
        select([], [], 1.0, np.random.default_rng(0))
    with pytest.raises(ValueError):
        select([0], [1.0, 2.0], 1.0, np.random.default_rng(0))


def test_single_circle_with_slack():
    res = sed_run(1, 1.05, SedConfig(), np.random.default_rng(0))
    assert res.energy <= 1e-25 and res.iterations <= 2


def test_seven_with_slack_mostly_feasible():
    ok = sum(sed_run(7, 3.01, SedConfig(gbo=GboConfig(k=3)), np.random.default_rng(s)).energy <= 1e-25
             for s in range(10))
    assert ok > 5


def test_seven_in_too_small_container():
    res = sed_run(7, 2.0, SedConfig(s_iter=30), np.random.default_rng(0))
    assert res.energy > 0
    assert res.iterations == 30


def test_best_energy_matches_layout():
    res = sed_run(9, 3.2, SedConfig(s_iter=15, gbo=GboConfig(k=2)), np.random.default_rng(4))
    assert res.energy == total_energy(res.layout, 3.2)


def test_deterministic():
    cfg = SedConfig(s_iter=10, gbo=GboConfig(k=2))
    a = sed(8, 3.0, cfg, np.random.default_rng(5))
    b = sed(8, 3.0, cfg, np.random.default_rng(5))
    assert np.array_equal(a, b)


def test_deadline_stops_search():
    t0 = time.monotonic()
    res = sed_run(40, 5.5, SedConfig(gbo=GboConfig(k=3)), np.random.default_rng(0), deadline=t0)
    assert res.iterations <= 1 and res.gbo_calls <= 2


def test_k_larger_than_n_is_clamped():
    res = sed_run(2, 2.5, SedConfig(gbo=GboConfig(k=5)), np.random.default_rng(0))
    assert res.energy <= 1e-25
