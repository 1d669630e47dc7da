"""Cutoff neighbor lists and their adaptive deferred maintenance."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .instance import centers

DEFAULT_L_CUT = 4.0
MIN_L_CUT = 2.0


@dataclass(frozen=True, eq=False)
class NeighborTable:
    """Neighbor lists in CSR form: ``indices[indptr[i]:indptr[i+1]]`` is the
    ascending list of circles within ``l_cut`` (strictly) of circle ``i``."""

    indptr: np.ndarray
    indices: np.ndarray
    l_cut: float

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    def __getitem__(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    @property
    def lists(self) -> list[list[int]]:
        return [self[i].tolist() for i in range(self.n)]

    @cached_property
    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Unordered pairs (i < j) in lexicographic order."""
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        keep = rows < self.indices
        return rows[keep], self.indices[keep]

    @classmethod
    def from_pairs(cls, n: int, i: np.ndarray, j: np.ndarray, l_cut: float) -> "NeighborTable":
        rows = np.concatenate([i, j])
        cols = np.concatenate([j, i])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(n + 1, dtype=np.intp)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(indptr, cols.astype(np.intp), float(l_cut))


def build_neighbors(layout, l_cut: float = DEFAULT_L_CUT) -> NeighborTable:
    """Scan-line construction: sweep circles in ascending x (ties by index)
    and test only those whose x lies strictly within ``l_cut``."""
    if not l_cut > 0:
        raise ValueError(f"l_cut must be positive, got {l_cut}")
    pos = np.ascontiguousarray(centers(layout))
    order = np.argsort(pos[:, 0], kind="stable")
    lo, hi = _kernels.scan_pairs(pos, order, float(l_cut))
    return NeighborTable.from_pairs(len(pos), lo, hi, l_cut)


def brute_force_neighbors(layout, l_cut: float = DEFAULT_L_CUT) -> NeighborTable:
    """All-pairs reference construction."""
    pos = centers(layout)
    i, j = np.triu_indices(len(pos), k=1)
    d = pos[i] - pos[j]
    close = np.sqrt(d[:, 0] ** 2 + d[:, 1] ** 2) < l_cut
    return NeighborTable.from_pairs(len(pos), i[close], j[close], l_cut)


def neighbors_equal(a: NeighborTable, b: NeighborTable) -> bool:
    if a.n != b.n:
        raise ValueError(f"tables cover {a.n} and {b.n} circles")
    return np.array_equal(a.indptr, b.indptr) and np.array_equal(a.indices, b.indices)


@dataclass(frozen=True)
class AnmState:
    cnt: int
    length: int
    table: NeighborTable

    @classmethod
    def start(cls, layout, l_cut: float = DEFAULT_L_CUT) -> "AnmState":
        return cls(0, 1, build_neighbors(layout, l_cut))


def covers_overlaps(pos, ref, l_cut: float) -> bool:
    """True when a table built at ``ref`` still lists every overlapping pair
    at ``pos``: if no circle moved (l_cut - 2)/2 or more, a pair closer than
    2 now was closer than l_cut then."""
    return 2.0 * _kernels.max_shift(pos, ref) < l_cut - 2.0


def anm_step(state: AnmState, layout) -> AnmState:
    """One deferred-maintenance tick; rebuilds once the counter reaches the
    deferring length, which doubles while the lists stay unchanged."""
    cnt = state.cnt + 1
    if cnt < state.length:
        return AnmState(cnt, state.length, state.table)
    fresh = build_neighbors(layout, state.table.l_cut)
    if neighbors_equal(fresh, state.table):
        return AnmState(0, 2 * state.length, state.table)
    return AnmState(0, 1, fresh)


class NeighborTracker:
    """Neighbor table in force during a run.

    ANM decides when to re-check the lists; in between, a displacement guard
    rebuilds early whenever some circle has moved far enough since the last
    build that an overlap could be missing. Energies and gradients from the
    table therefore always equal the all-pairs values.
    """

    def __init__(self, pos, l_cut: float = DEFAULT_L_CUT):
        pos = np.ascontiguousarray(centers(pos))
        self.l_cut = l_cut
        self.anm = AnmState.start(pos, l_cut)
        self.ref = pos.copy()
        self.rebuilds = 0

    @property
    def table(self):
        return self.anm.table

    def guard(self, pos) -> bool:
        """Rebuild if needed; True when the table object changed. ``pos`` is
        an (n, 2) array."""
        if covers_overlaps(pos, self.ref, self.l_cut):
            return False
        self.ref = pos.copy()
        fresh = build_neighbors(pos, self.l_cut)
        if neighbors_equal(fresh, self.anm.table):
            return False
        self.anm = AnmState(0, 1, fresh)
        self.rebuilds += 1
        return True

    def tick(self, pos) -> bool:
        """One ANM step; True when the table object changed."""
        table = self.anm.table
        self.anm = anm_step(self.anm, pos)
        if self.anm.cnt == 0:  # lists were just checked against pos
            self.ref = pos.copy()
        if self.anm.table is table:
            return False
        self.rebuilds += 1
        return True
