"""Parameter-study harness: time GBO from seeded random starts per
(n, k, strategy) cell."""

from __future__ import annotations

import csv
import io
import logging
import time
from dataclasses import dataclass, field

import numpy as np

from .gbo import GboConfig, gbo_run, hessian_entries
from .instance import KNOWN_OPTIMA, BestKnownRegistry, estimate_radius, random_layout
from .partition import PartitionStrategy

log = logging.getLogger(__name__)

COLUMNS = ("n", "k", "strategy", "runs", "mean_time_s", "mean_energy", "mean_iterations", "hessian_entries")


@dataclass(frozen=True)
class BenchSpec:
    n_values: list[int]
    k_values: list[int]
    strategies: list[PartitionStrategy] = field(default_factory=lambda: [PartitionStrategy.SECTOR])
    runs_per_cell: int = 10
    seed: int = 0
    max_iter: int = 5000
    l_cut: float = 4.0

    def __post_init__(self):
        object.__setattr__(self, "strategies", [PartitionStrategy(s) for s in self.strategies])
        if not (self.n_values and self.k_values and self.strategies):
            raise ValueError("n, k and strategy lists must be nonempty")
        if self.runs_per_cell < 1:
            raise ValueError("runs_per_cell must be >= 1")
        if min(self.n_values) < 1 or min(self.k_values) < 1:
            raise ValueError("n and k must be positive")


@dataclass
class BenchRow:
    n: int
    k: int
    strategy: str
    runs: int
    mean_time_s: float
    mean_energy: float
    mean_iterations: float
    hessian_entries: int


@dataclass
class BenchReport:
    rows: list[BenchRow]
    skipped: list[tuple[int, int, str]]
    times: dict = field(default_factory=dict)  # (n, k, strategy) -> per-run seconds

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow([r.n, r.k, r.strategy, r.runs, f"{r.mean_time_s:.6f}", f"{r.mean_energy:.17g}",
                        f"{r.mean_iterations:.6g}", r.hessian_entries])
        return buf.getvalue()


def start_layout(n: int, R: float, seed: int, run: int) -> tuple[np.ndarray, np.random.Generator]:
    """Starting layout and partition stream for one run. Depends only on
    (seed, n, run), so every cell of a given n starts from the same layouts."""
    rng = np.random.default_rng([seed, n, run])
    return random_layout(n, R, rng), rng


def run_bench(spec: BenchSpec, registry: BestKnownRegistry | None = None) -> BenchReport:
    registry = KNOWN_OPTIMA if registry is None else registry
    rows, skipped, times = [], [], {}
    for n in spec.n_values:
        R = registry.get(n) or estimate_radius(n)
        for strategy in spec.strategies:
            for k in spec.k_values:
                if k > n:
                    log.warning("skipping n=%d k=%d: more batches than circles", n, k)
                    skipped.append((n, k, strategy.value))
                    continue
                cfg = GboConfig(k=k, strategy=strategy, max_iter=spec.max_iter, l_cut=spec.l_cut)
                ts, es, its = [], [], []
                for run in range(spec.runs_per_cell):
                    x, rng = start_layout(n, R, spec.seed, run)
                    t0 = time.perf_counter()
                    res = gbo_run(x, R, cfg, rng)
                    ts.append(time.perf_counter() - t0)
                    es.append(res.energy)
                    its.append(res.iterations)
                times[(n, k, strategy.value)] = ts
                rows.append(BenchRow(n, k, strategy.value, spec.runs_per_cell, float(np.mean(ts)),
                                     float(np.mean(es)), float(np.mean(its)), hessian_entries(n, k)))
                log.info("n=%d k=%d %s: %.4fs mean", n, k, strategy.value, rows[-1].mean_time_s)
    return BenchReport(rows, skipped, times)
