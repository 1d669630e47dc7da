"""Elastic overlap energy of a packing and its analytic gradients.

Every function takes an optional :class:`~pecc.neighbor.NeighborTable`; with
one, circle pairs are enumerated from the table, otherwise all n(n-1)/2 pairs
are used. Only overlapping pairs contribute to the (sequential) sums, so both
routes give bit-identical results whenever the table covers every overlap.

Gradients are analytic. At a tangency the overlap term is taken as inactive,
and coincident centers (or a center at the origin) use direction (1, 0).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import _kernels
from .instance import centers


def pair_overlap(ci, cj) -> float:
    dx, dy = ci[0] - cj[0], ci[1] - cj[1]
    return max(0.0, 2.0 - math.sqrt(dx * dx + dy * dy))


def container_overlap(ci, R: float) -> float:
    return max(0.0, math.sqrt(ci[0] * ci[0] + ci[1] * ci[1]) + 1.0 - R)


@lru_cache(maxsize=32)
def _all_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = np.triu_indices(n, k=1)
    return i.astype(np.intp), j.astype(np.intp)


@lru_cache(maxsize=32)
def _all_rows(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.intp)


def _pos(layout) -> np.ndarray:
    return np.ascontiguousarray(centers(layout))


def candidate_pairs(n: int, neighbors=None) -> tuple[np.ndarray, np.ndarray]:
    if neighbors is None:
        return _all_pairs(n)
    if neighbors.n != n:
        raise ValueError(f"neighbor table covers {neighbors.n} circles, layout has {n}")
    return neighbors.pairs


def batch_pairs(n: int, batch, neighbors=None) -> tuple[np.ndarray, np.ndarray]:
    """Candidate pairs with at least one endpoint in ``batch``; each appears
    once, so an intra-batch overlap is counted a single time."""
    I, J = candidate_pairs(n, neighbors)
    inb = np.zeros(n, dtype=bool)
    inb[np.asarray(batch, dtype=np.intp)] = True
    keep = inb[I] | inb[J]
    return I[keep], J[keep]


def total_energy(layout, R: float, neighbors=None) -> float:
    pos = _pos(layout)
    I, J = candidate_pairs(len(pos), neighbors)
    return _kernels.energy(pos, I, J, _all_rows(len(pos)), float(R))


def batch_energy(layout, batch, R: float, neighbors=None) -> float:
    pos = _pos(layout)
    batch = np.asarray(batch, dtype=np.intp)
    I, J = batch_pairs(len(pos), batch, neighbors)
    return _kernels.energy(pos, I, J, batch, float(R))


def total_gradient(layout, R: float, neighbors=None) -> np.ndarray:
    pos = _pos(layout)
    I, J = candidate_pairs(len(pos), neighbors)
    out = np.empty_like(pos)
    _kernels.gradient(pos, I, J, _all_rows(len(pos)), float(R), out)
    return out.reshape(-1)


def batch_gradient(layout, batch, R: float, neighbors=None) -> np.ndarray:
    """Gradient of the batch energy with respect to the batch's own
    coordinates, ordered (x, y) per circle following ``batch``."""
    pos = _pos(layout)
    batch = np.asarray(batch, dtype=np.intp)
    I, J = batch_pairs(len(pos), batch, neighbors)
    out = np.empty_like(pos)
    _kernels.gradient(pos, I, J, batch, float(R), out)
    return out[batch].reshape(-1)


def split_z(z) -> tuple[np.ndarray, float]:
    z = np.asarray(z, dtype=np.float64).reshape(-1)
    if z.size < 3 or z.size % 2 == 0:
        raise ValueError(f"augmented vector must hold 2n+1 entries, got {z.size}")
    return z[:-1], float(z[-1])


def penalty_energy(z, lam: float, neighbors=None) -> float:
    """Overlap energy plus the radius penalty ``lam * R**2``."""
    x, R = split_z(z)
    return total_energy(x, R, neighbors) + lam * R * R


def penalty_gradient(z, lam: float, neighbors=None) -> np.ndarray:
    x, R = split_z(z)
    pos = _pos(x)
    I, J = candidate_pairs(len(pos), neighbors)
    out = np.empty_like(pos)
    dR = _kernels.gradient(pos, I, J, _all_rows(len(pos)), R, out)
    return np.append(out.reshape(-1), dR + 2.0 * lam * R)
