"""Geometric k-batch partitions of the circles in a layout."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .instance import centers


class PartitionStrategy(str, Enum):
    SECTOR = "sector"
    ANNULUS = "annulus"
    FENCE = "fence"
    RANDOM = "random"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, eq=False)
class Partition:
    batches: tuple[np.ndarray, ...]
    strategy: PartitionStrategy

    @property
    def k(self) -> int:
        return len(self.batches)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.batches]


def batch_sizes(n: int, k: int) -> list[int]:
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


def make_partition(layout, k: int, strategy="sector", rng: np.random.Generator | None = None) -> Partition:
    """Sort circles by the strategy key and cut the order into k runs whose
    sizes differ by at most one (larger runs first)."""
    strategy = PartitionStrategy(strategy)
    pos = centers(layout)
    n = len(pos)
    if not 1 <= k <= n:
        raise ValueError(f"batch count k={k} must lie in [1, {n}]")

    if strategy is PartitionStrategy.SECTOR:
        theta = np.arctan2(pos[:, 1], pos[:, 0])
        theta[theta == -np.pi] = np.pi  # keep angles in (-pi, pi]
        order = np.argsort(theta, kind="stable")
    elif strategy is PartitionStrategy.ANNULUS:
        order = np.argsort(np.hypot(pos[:, 0], pos[:, 1]), kind="stable")
    elif strategy is PartitionStrategy.FENCE:
        order = np.argsort(pos[:, 0], kind="stable")
    else:
        if rng is None:
            raise ValueError("the random strategy needs a random generator")
        order = rng.permutation(n)

    cuts = np.cumsum(batch_sizes(n, k))[:-1]
    batches = tuple(np.sort(b) for b in np.split(order.astype(np.intp), cuts))
    return Partition(batches, strategy)
