"""Compiled inner loops for energy, gradient and neighbor construction.

Sums run sequentially in the order of the given pair and row arrays, and
non-overlapping pairs contribute nothing, so any pair list that covers the
same overlaps yields bit-identical results.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def energy(pos, I, J, rows, R):
    e = 0.0
    for p in range(I.size):
        i = I[p]
        j = J[p]
        dx = pos[i, 0] - pos[j, 0]
        dy = pos[i, 1] - pos[j, 1]
        d = 2.0 - math.sqrt(dx * dx + dy * dy)
        if d > 0.0:
            e += d * d
    for q in range(rows.size):
        i = rows[q]
        c = math.sqrt(pos[i, 0] * pos[i, 0] + pos[i, 1] * pos[i, 1]) + 1.0 - R
        if c > 0.0:
            e += c * c
    return e


@njit(cache=True, nogil=True)
def gradient(pos, I, J, rows, R, out):
    """Writes dE/dc_i into ``out`` (n, 2), zeroing it first; returns dE/dR."""
    out[:, :] = 0.0
    for p in range(I.size):
        i = I[p]
        j = J[p]
        dx = pos[i, 0] - pos[j, 0]
        dy = pos[i, 1] - pos[j, 1]
        dist = math.sqrt(dx * dx + dy * dy)
        d = 2.0 - dist
        if d > 0.0:
            if dist > 0.0:
                ux = dx / dist
                uy = dy / dist
            else:
                ux = 1.0
                uy = 0.0
            w = -2.0 * d
            out[i, 0] += w * ux
            out[i, 1] += w * uy
            out[j, 0] -= w * ux
            out[j, 1] -= w * uy
    dR = 0.0
    for q in range(rows.size):
        i = rows[q]
        r = math.sqrt(pos[i, 0] * pos[i, 0] + pos[i, 1] * pos[i, 1])
        c = r + 1.0 - R
        if c > 0.0:
            if r > 0.0:
                ux = pos[i, 0] / r
                uy = pos[i, 1] / r
            else:
                ux = 1.0
                uy = 0.0
            out[i, 0] += 2.0 * c * ux
            out[i, 1] += 2.0 * c * uy
            dR -= 2.0 * c
    return dR


@njit(cache=True, nogil=True)
def scan_pairs(pos, order, l_cut):
    """Pairs (lo, hi) closer than ``l_cut`` found by sweeping the x-sorted
    ``order``; the inner scan stops at the first x gap >= ``l_cut``."""
    n = order.size
    cap = 16 * n + 16
    lo = np.empty(cap, dtype=np.intp)
    hi = np.empty(cap, dtype=np.intp)
    m = 0
    for s in range(n):
        i = order[s]
        xi = pos[i, 0]
        yi = pos[i, 1]
        for t in range(s + 1, n):
            j = order[t]
            dx = pos[j, 0] - xi
            if not dx < l_cut:
                break
            dy = pos[j, 1] - yi
            if math.sqrt(dx * dx + dy * dy) < l_cut:
                if m == cap:
                    cap *= 2
                    lo2 = np.empty(cap, dtype=np.intp)
                    hi2 = np.empty(cap, dtype=np.intp)
                    lo2[:m] = lo[:m]
                    hi2[:m] = hi[:m]
                    lo = lo2
                    hi = hi2
                if i < j:
                    lo[m] = i
                    hi[m] = j
                else:
                    lo[m] = j
                    hi[m] = i
                m += 1
    return lo[:m], hi[:m]


@njit(cache=True, nogil=True)
def max_shift(pos, ref):
    """Largest Euclidean displacement of any row of ``pos`` from ``ref``."""
    m = 0.0
    for i in range(pos.shape[0]):
        dx = pos[i, 0] - ref[i, 0]
        dy = pos[i, 1] - ref[i, 1]
        d = dx * dx + dy * dy
        if d > m:
            m = d
    return math.sqrt(m)
