"""Solution-space exploring and descent: perturb-and-minimize search for a
zero-energy layout at a fixed container radius."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .gbo import GboConfig, gbo_run
from .instance import as_layout, random_layout


@dataclass(frozen=True)
class SedConfig:
    s_iter: int = 500
    feasible_energy: float = 1e-25
    perturb_range: float = 0.8
    gbo: GboConfig = field(default_factory=GboConfig)

    def __post_init__(self):
        if self.s_iter < 1 or not self.feasible_energy > 0 or not self.perturb_range > 0:
            raise ValueError("SED parameters must be positive")


def j_metric(E: float) -> int:
    """ceil(-log10 E)."""
    if not E > 0:
        raise ValueError(f"J is defined for positive energies only, got {E}")
    return math.ceil(-math.log10(E))


def perturb(layout, range_: float, rng: np.random.Generator) -> np.ndarray:
    x = as_layout(layout)
    return x + rng.uniform(-range_, range_, size=x.size)


def softmax_weights(energies) -> np.ndarray:
    J = np.array([j_metric(e) for e in energies], dtype=np.float64)
    w = np.exp(J - J.max())
    return w / w.sum()


def select(candidates, energies, current_energy: float, rng: np.random.Generator) -> int:
    """Index of the chosen candidate.

    The lowest-energy candidate wins outright if it beats ``current_energy``;
    otherwise one is drawn with probability proportional to exp(J(E)).
    """
    energies = list(energies)
    if not energies or len(energies) != len(candidates):
        raise ValueError("need one energy per candidate and at least one candidate")
    best = int(np.argmin(energies))
    if energies[best] < current_energy:
        return best
    return int(rng.choice(len(energies), p=softmax_weights(energies)))


@dataclass
class SedResult:
    layout: np.ndarray
    energy: float
    iterations: int
    gbo_calls: int


def sed_run(n: int, R: float, config: SedConfig = SedConfig(), rng: np.random.Generator | None = None,
            deadline: float | None = None) -> SedResult:
    """Search for a layout of ``n`` circles with energy <= feasible_energy.

    ``deadline`` is a :func:`time.monotonic` instant; once passed, no further
    minimization is started and the best layout so far is returned.
    """
    if n < 1 or not R > 0:
        raise ValueError("need n >= 1 and R > 0")
    rng = np.random.default_rng() if rng is None else rng
    gbo = config.gbo if config.gbo.k <= n else replace(config.gbo, k=n)

    def minimize(x, stream):
        res = gbo_run(x, R, gbo, stream)
        return res.layout, res.energy

    cur, cur_e = minimize(random_layout(n, R, rng), rng)
    best, best_e = cur, cur_e
    calls = 1
    it = 0
    for it in range(1, config.s_iter + 1):
        if best_e <= config.feasible_energy:
            break
        if deadline is not None and time.monotonic() >= deadline:
            break
        m = max(1, j_metric(cur_e))
        streams = rng.spawn(m)
        cands, energies = [], []
        for stream in streams:
            if deadline is not None and cands and time.monotonic() >= deadline:
                break
            y, e = minimize(perturb(cur, config.perturb_range, stream), stream)
            calls += 1
            cands.append(y)
            energies.append(e)
        i = select(cands, energies, cur_e, rng)
        cur, cur_e = cands[i], energies[i]
        if cur_e < best_e:
            best, best_e = cur, cur_e
    return SedResult(best, best_e, it, calls)


def sed(n: int, R: float, config: SedConfig = SedConfig(), rng: np.random.Generator | None = None,
        deadline: float | None = None) -> np.ndarray:
    return sed_run(n, R, config, rng, deadline).layout
