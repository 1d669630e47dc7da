"""Geometric batch optimization: block-wise BFGS over a geometric partition.

Circles are split into k batches; each iteration runs one BFGS step per batch
in turn, holding the others fixed, then ticks the neighbor maintenance. With
k = 1 this is classic BFGS on the whole layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg.blas import dsymv, dsyr2

from . import _kernels
from .energy import batch_pairs, total_energy
from .instance import as_layout
from .neighbor import DEFAULT_L_CUT, MIN_L_CUT, NeighborTracker, build_neighbors, neighbors_equal
from .partition import PartitionStrategy, batch_sizes, make_partition

ARMIJO_C1 = 1e-4
MAX_HALVINGS = 50
CURVATURE_FLOOR = 1e-14


@dataclass(frozen=True)
class GboConfig:
    k: int = 1
    strategy: PartitionStrategy = PartitionStrategy.SECTOR
    max_iter: int = 5000
    grad_tol: float = 1e-12
    l_cut: float = DEFAULT_L_CUT
    use_neighbors: bool = True

    def __post_init__(self):
        object.__setattr__(self, "strategy", PartitionStrategy(self.strategy))
        if self.k < 1 or self.max_iter < 1:
            raise ValueError("k and max_iter must be positive")
        if not 0 < self.grad_tol <= 1e-6:
            raise ValueError(f"grad_tol must lie in (0, 1e-6], got {self.grad_tol}")
        if not self.l_cut >= MIN_L_CUT:
            raise ValueError(f"l_cut must be >= {MIN_L_CUT}, got {self.l_cut}")


@dataclass(frozen=True)
class LineSearchResult:
    alpha: float
    evals: int
    value: float


class LineSearchFailure(RuntimeError):
    def __init__(self, evals: int):
        super().__init__(f"no sufficient decrease after {evals} evaluations")
        self.evals = evals


def line_search(objective: Callable[[float], float], g_dot_d: float, f0: float | None = None,
                c1: float = ARMIJO_C1, max_halvings: int = MAX_HALVINGS, noise: float = 0.0) -> LineSearchResult:
    """Backtracking Armijo search from alpha = 1, halving on each rejection.

    ``objective(alpha)`` is the function value along the search direction and
    ``g_dot_d`` its slope at zero. ``f0`` defaults to ``objective(0.0)``.
    Raises :class:`LineSearchFailure` when ``max_halvings`` halvings find no
    sufficient decrease.
    """
    if not g_dot_d < 0:
        raise ValueError(f"not a descent direction (slope {g_dot_d})")
    evals = 0
    if f0 is None:
        f0 = objective(0.0)
        evals += 1
    alpha = 1.0
    for _ in range(max_halvings + 1):
        f = objective(alpha)
        evals += 1
        # difference form: the decrease test keeps its meaning even when
        # c1 * alpha * g_dot_d is below the resolution of f0
        if f - f0 <= c1 * alpha * g_dot_d + noise:
            return LineSearchResult(alpha, evals, f)
        alpha *= 0.5
    raise LineSearchFailure(evals)


def bfgs_update(H, u, v, floor: float = CURVATURE_FLOOR) -> np.ndarray:
    """Inverse-Hessian BFGS update; returns a new matrix.

    ``H`` is returned unchanged (as a copy) when the curvature ``v.u`` is not
    above ``floor * |u| |v|``.
    """
    H = np.array(H, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if H.shape != (u.size, u.size) or v.size != u.size:
        raise ValueError(f"shape mismatch: H {H.shape}, u {u.shape}, v {v.shape}")
    beta = float(v @ u)
    if not beta > floor * np.linalg.norm(u) * np.linalg.norm(v):
        return H
    w = H @ v
    c = (beta + v @ w) / beta**2
    return H - (np.outer(u, w) + np.outer(w, u)) / beta + c * np.outer(u, u)


class InverseHessian:
    """Dense symmetric inverse-Hessian approximation, updated in place.

    Only the upper triangle is kept current; products go through BLAS
    ``dsymv`` and updates through a single rank-2 ``dsyr2``.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.H = np.asfortranarray(np.eye(dim))
        self.is_identity = True
        self.version = 0

    @property
    def entries(self) -> int:
        return self.H.size

    def reset(self) -> None:
        if not self.is_identity:
            self.H[:] = 0.0
            np.fill_diagonal(self.H, 1.0)
            self.is_identity = True
            self.version += 1

    def dot(self, x: np.ndarray) -> np.ndarray:
        return dsymv(1.0, self.H, x)

    def update(self, u: np.ndarray, v: np.ndarray, floor: float = CURVATURE_FLOOR) -> bool:
        beta = float(v @ u)
        if not beta > floor * np.linalg.norm(u) * np.linalg.norm(v):
            return False
        w = self.dot(v)
        c = (beta + v @ w) / beta**2
        # H - (u w' + w u')/beta + c u u'  ==  H + u y' + y u'
        y = -w / beta + 0.5 * c * u
        self.H = dsyr2(1.0, u, y, a=self.H, overwrite_a=1)
        self.is_identity = False
        self.version += 1
        return True

    def full(self) -> np.ndarray:
        return np.triu(self.H) + np.triu(self.H, 1).T


class _Batch:
    def __init__(self, idx: np.ndarray):
        self.idx = idx
        self.hess = InverseHessian(2 * len(idx))
        self.I = self.J = None
        self._buf = None

    def set_pairs(self, n: int, neighbors) -> None:
        self.I, self.J = batch_pairs(n, self.idx, neighbors)
        self._buf = np.empty((n, 2))

    def energy(self, pos, R) -> float:
        return _kernels.energy(pos, self.I, self.J, self.idx, R)

    def gradient(self, pos, R) -> np.ndarray:
        _kernels.gradient(pos, self.I, self.J, self.idx, R, self._buf)
        return self._buf[self.idx].reshape(-1)


# Relative allowance on the sufficient-decrease test for rounding in the
# energy itself; without it steps near a positive-energy minimum are rejected
# long before the gradient reaches the convergence threshold.
NOISE_REL = 1e-14


def bfgs_step(x, g, hess: InverseHessian, f, grad, f0=None):
    """One quasi-Newton step from ``x`` with gradient ``g``.

    ``f(x)`` and ``grad(x)`` evaluate the objective at trial points. Returns
    the new point, or ``None`` when the line search fails (the inverse Hessian
    is then reset to the identity).
    """
    d = -hess.dot(g)
    gd = float(g @ d)
    if not gd < 0:
        hess.reset()
        d = -g
        gd = -float(g @ g)
    if f0 is None:
        f0 = f(x)
    try:
        ls = line_search(lambda a: f(x + a * d), gd, f0, noise=NOISE_REL * abs(f0))
    except LineSearchFailure:
        hess.reset()
        return None
    x_new = x + ls.alpha * d
    hess.update(x_new - x, grad(x_new) - g)
    return x_new


@dataclass
class GboResult:
    layout: np.ndarray
    energy: float
    iterations: int
    converged: bool
    grad_norm_sum: float
    hessian_entries: int
    rebuilds: int
    stalled: bool = False


def gbo_run(layout, R: float, config: GboConfig = GboConfig(), rng: np.random.Generator | None = None,
            callback=None) -> GboResult:
    """Minimize the elastic energy at fixed radius ``R`` by batched BFGS.

    ``callback(t, layout, table)`` is called after every iteration with a
    read-only view of the current layout and the neighbor table in force
    (``None`` when neighbor lists are disabled).

    Besides the gradient test, the loop stops early once an iteration leaves
    the layout and every inverse Hessian bit-for-bit unchanged with an
    up-to-date neighbor table: the remaining iterations would replay that
    same iteration, so the result is the one ``max_iter`` would give.
    """
    x0 = as_layout(layout)
    pos = x0.reshape(-1, 2).copy()
    R = float(R)
    n = len(pos)
    part = make_partition(pos, config.k, config.strategy, rng)
    batches = [_Batch(b) for b in part.batches]

    tables = NeighborTracker(pos, config.l_cut) if config.use_neighbors else None

    def refresh():
        for b in batches:
            b.set_pairs(n, tables.table if tables else None)

    refresh()

    gsum = np.inf
    t = 0
    converged = stalled = False
    for t in range(1, config.max_iter + 1):
        gsum = 0.0
        changed = False
        for b in batches:
            idx = b.idx

            def place(xb, idx=idx):
                pos[idx] = xb.reshape(-1, 2)
                if tables is not None and tables.guard(pos):
                    refresh()

            def f(xb, b=b):
                place(xb)
                return b.energy(pos, R)

            def grad(xb, b=b):
                place(xb)
                return b.gradient(pos, R)

            xb = pos[idx].reshape(-1).copy()
            g = b.gradient(pos, R)
            gn = float(np.linalg.norm(g))
            gsum += gn
            if gn == 0.0:
                continue
            version = b.hess.version
            x_new = bfgs_step(xb, g, b.hess, f, grad)
            if x_new is None:
                x_new = xb
            place(x_new)
            if not changed:
                changed = b.hess.version != version or not np.array_equal(x_new, xb)

        if tables is not None and tables.tick(pos):
            refresh()
        table = tables.table if tables else None
        if callback is not None:
            view = pos.reshape(-1)
            view.flags.writeable = False
            callback(t, view, table)
            view.flags.writeable = True
        if gsum <= config.grad_tol:
            converged = True
            break
        if not changed and (table is None or _table_current(table, pos)):
            stalled = True
            break

    out = pos.reshape(-1).copy()
    return GboResult(
        layout=out,
        energy=total_energy(out, R, build_neighbors(out, config.l_cut)),
        iterations=t,
        converged=converged,
        grad_norm_sum=gsum,
        hessian_entries=sum(b.hess.entries for b in batches),
        rebuilds=tables.rebuilds if tables else 0,
        stalled=stalled,
    )


def _table_current(table, pos) -> bool:
    return neighbors_equal(table, build_neighbors(pos, table.l_cut))


def gbo_minimize(layout, R: float, config: GboConfig = GboConfig(), rng: np.random.Generator | None = None,
                 callback=None) -> np.ndarray:
    return gbo_run(layout, R, config, rng, callback).layout


def hessian_entries(n: int, k: int) -> int:
    """Stored inverse-Hessian entries for an n-circle, k-batch run."""
    return sum((2 * s) ** 2 for s in batch_sizes(n, k))
