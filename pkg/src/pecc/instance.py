"""Problem instances, layouts, solutions and their text formats.

A layout is a flat float64 array ``(x_1, y_1, ..., x_n, y_n)`` of unit-circle
centers; the container is a circle of radius ``R`` centered at the origin.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Instance:
    n: int
    baseline_radius: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not self.baseline_radius >= 1.0:
            raise ValueError(f"baseline radius must be >= 1, got {self.baseline_radius}")


def as_layout(coords, n: int | None = None) -> np.ndarray:
    """Validate and return ``coords`` as a flat float64 layout array."""
    x = np.asarray(coords, dtype=np.float64).reshape(-1)
    if x.size == 0 or x.size % 2:
        raise ValueError(f"layout must hold 2n > 0 coordinates, got {x.size}")
    if n is not None and x.size != 2 * n:
        raise ValueError(f"layout has {x.size // 2} circles, expected {n}")
    if not np.all(np.isfinite(x)):
        raise ValueError("layout contains non-finite coordinates")
    return x


def centers(layout) -> np.ndarray:
    """(n, 2) view of a flat layout."""
    return np.asarray(layout, dtype=np.float64).reshape(-1, 2)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    max_pair_violation: float
    max_container_violation: float


@dataclass(frozen=True, eq=False)
class Solution:
    layout: np.ndarray
    radius: float
    energy: float

    @property
    def n(self) -> int:
        return self.layout.size // 2

    @classmethod
    def from_layout(cls, layout, radius: float) -> "Solution":
        from .energy import total_energy

        x = as_layout(layout).copy()
        x.setflags(write=False)
        return cls(x, float(radius), total_energy(x, radius))


def random_layout(n: int, R: float, rng: np.random.Generator) -> np.ndarray:
    """Centers drawn independently from U(-R, R) in both coordinates."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not R > 0:
        raise ValueError(f"radius must be positive, got {R}")
    x = rng.uniform(-R, R, size=2 * n)
    # uniform() samples [low, high); nudge the closed end off the boundary
    x[x == -R] = np.nextafter(-R, 0.0)
    return x


def _pair_distances(pos: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(len(pos), k=1)
    diff = pos[i] - pos[j]
    return np.hypot(diff[:, 0], diff[:, 1])


def check_feasibility(layout, R: float, tol: float = DEFAULT_TOL) -> FeasibilityReport:
    pos = centers(layout)
    dist = _pair_distances(pos)
    pair_v = float(max(0.0, np.max(2.0 - dist))) if dist.size else 0.0
    cont = np.hypot(pos[:, 0], pos[:, 1]) + 1.0 - R
    cont_v = float(max(0.0, np.max(cont)))
    return FeasibilityReport(pair_v <= tol and cont_v <= tol, pair_v, cont_v)


def contact_counts(layout, eps: float = 1e-10) -> np.ndarray:
    """Per-circle number of other circles whose center distance is <= 2 + eps."""
    pos = centers(layout)
    n = len(pos)
    i, j = np.triu_indices(n, k=1)
    dist = _pair_distances(pos)
    touch = dist <= 2.0 + eps
    return np.bincount(i[touch], minlength=n) + np.bincount(j[touch], minlength=n)


@dataclass
class BestKnownRegistry:
    """Best-known container radii keyed by n."""

    entries: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        for n, r in self.entries.items():
            if n < 1 or not r >= 1.0:
                raise ValueError(f"bad registry entry {n}: {r}")

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    def __getitem__(self, n: int) -> float:
        return self.entries[n]

    def get(self, n: int, default=None):
        return self.entries.get(n, default)

    @classmethod
    def load(cls, path) -> "BestKnownRegistry":
        entries: dict[int, float] = {}
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), 1):
                row = [c.strip() for c in row]
                if not row or not row[0] or row[0].startswith("#"):
                    continue
                try:
                    n, r = int(row[0]), float(row[1])
                except (ValueError, IndexError):
                    if lineno == 1:
                        continue  # header
                    raise ValueError(f"{path}:{lineno}: expected 'n,radius', got {row!r}")
                if n in entries:
                    raise ValueError(f"{path}:{lineno}: duplicate n={n}")
                entries[n] = r
        return cls(entries)

    def save(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("n,radius\n")
            for n in sorted(self.entries):
                fh.write(f"{n},{self.entries[n]:.17g}\n")


# Proven optima for small n; used when no registry file is given.
KNOWN_OPTIMA = BestKnownRegistry({
    1: 1.0,
    2: 2.0,
    3: 1.0 + 2.0 / math.sqrt(3.0),
    4: 1.0 + math.sqrt(2.0),
    5: 1.0 + 1.0 / math.sin(math.pi / 5.0),
    6: 3.0,
    7: 3.0,
    8: 1.0 + 1.0 / math.sin(math.pi / 7.0),
})


def estimate_radius(n: int) -> float:
    """Rough container radius for n circles at a typical dense-packing density.

    Only a starting point for instances with no registry entry; uses a
    packing density of 0.83, near what best-known layouts reach for a few
    hundred circles.
    """
    return max(1.0, math.sqrt(n / 0.83))


def format_solution(layout, R: float) -> str:
    pos = centers(layout)
    lines = [f"{len(pos)} {R:.17g}"]
    lines += [f"{x:.17g} {y:.17g}" for x, y in pos]
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> tuple[np.ndarray, float]:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("solution header must be 'n R'")
    try:
        n, R = int(rows[0][0]), float(rows[0][1])
        pts = [(float(a), float(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise ValueError(f"malformed solution: {exc}") from None
    if n < 1 or len(pts) != n:
        raise ValueError(f"solution declares {n} circles but lists {len(pts)}")
    if not R > 0:
        raise ValueError(f"solution radius must be positive, got {R}")
    return as_layout(np.array(pts).reshape(-1)), R


def write_solution(path, layout, R: float) -> None:
    Path(path).write_text(format_solution(layout, R))


def read_solution(path) -> tuple[np.ndarray, float]:
    return parse_solution(Path(path).read_text())
