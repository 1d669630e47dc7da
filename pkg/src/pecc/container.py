"""Container-radius adjustment by a shrinking-penalty BFGS schedule."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .energy import total_energy
from .gbo import InverseHessian, bfgs_step
from .instance import DEFAULT_TOL, Solution, as_layout, check_feasibility
from .neighbor import DEFAULT_L_CUT, NeighborTracker

MIN_RADIUS = 1e-6
PLATEAU = 50


@dataclass(frozen=True)
class AdjustConfig:
    lambda0: float = 1e-4
    outer_iters: int = 35
    inner_max_iter: int = 2000
    inner_grad_tol: float = 1e-12
    l_cut: float = DEFAULT_L_CUT

    def __post_init__(self):
        if not (self.lambda0 > 0 and self.outer_iters > 0 and self.inner_max_iter > 0
                and self.inner_grad_tol > 0):
            raise ValueError("adjustment parameters must be positive")


class AdjustmentFailed(RuntimeError):
    """The schedule ended on an infeasible layout; ``solution`` holds it."""

    def __init__(self, solution: Solution, report):
        super().__init__(
            f"container adjustment ended infeasible (pair violation "
            f"{report.max_pair_violation:.3g}, container violation {report.max_container_violation:.3g})")
        self.solution = solution
        self.report = report


class _Penalty:
    """U(z) = E(x, R) + lam R^2 over z = (x, R) with neighbor-list pairs."""

    def __init__(self, n: int, lam: float):
        self.n = n
        self.lam = lam
        self.rows = np.arange(n, dtype=np.intp)
        self.buf = np.empty((n, 2))
        self.I = self.J = None

    def set_table(self, table) -> None:
        self.I, self.J = table.pairs

    @staticmethod
    def _split(z):
        R = max(float(z[-1]), MIN_RADIUS)
        return np.ascontiguousarray(z[:-1].reshape(-1, 2)), R

    def value(self, z) -> float:
        pos, R = self._split(z)
        return _kernels.energy(pos, self.I, self.J, self.rows, R) + self.lam * R * R

    def gradient(self, z) -> np.ndarray:
        pos, R = self._split(z)
        dR = _kernels.gradient(pos, self.I, self.J, self.rows, R, self.buf)
        return np.append(self.buf.reshape(-1), dR + 2.0 * self.lam * R)


def _minimize(z, U: _Penalty, tracker: NeighborTracker, config: AdjustConfig):
    hess = InverseHessian(z.size)
    U.set_table(tracker.table)

    def place(zz):
        if zz[-1] < MIN_RADIUS:
            zz[-1] = MIN_RADIUS
        if tracker.guard(zz[:-1].reshape(-1, 2)):
            U.set_table(tracker.table)

    def f(zz):
        place(zz)
        return U.value(zz)

    def grad(zz):
        place(zz)
        return U.gradient(zz)

    failed = False
    best = U.value(z)
    flat = 0
    for _ in range(config.inner_max_iter):
        g = U.gradient(z)
        if np.max(np.abs(g)) <= config.inner_grad_tol:
            break
        version = hess.version
        z_new = bfgs_step(z, g, hess, f, grad)
        if z_new is None:
            if failed:  # steepest descent failed too: nothing left to try
                break
            failed = True
            continue
        failed = False
        if hess.version == version and np.array_equal(z_new, z):
            break  # a bit-identical step: every further iteration repeats it
        place(z_new)
        z = z_new
        u = U.value(z)
        if u < best:
            best, flat = u, 0
        else:
            # at a kink (one circle on the container center) the gradient
            # never shrinks and the iterates just jitter; stop on a plateau
            flat += 1
            if flat >= PLATEAU:
                break
        if tracker.tick(z[:-1].reshape(-1, 2)):
            U.set_table(tracker.table)
    return z


def adjust_container(layout, R: float, config: AdjustConfig = AdjustConfig(), radii: list | None = None) -> Solution:
    """Shrink (or grow) the container around ``layout`` to a locally minimal
    feasible radius.

    Each outer step minimizes the overlap energy plus ``lam R^2`` over centers
    and radius by BFGS, warm-started from the previous step with a fresh
    inverse Hessian, then halves ``lam``. When ``radii`` is a list, the radius
    after every outer step is appended to it.

    Raises :class:`AdjustmentFailed` if the final layout is not feasible
    within 1e-9.
    """
    x = as_layout(layout)
    if not R > 0:
        raise ValueError(f"radius must be positive, got {R}")
    z = np.append(x, float(R))
    n = x.size // 2
    tracker = NeighborTracker(x, config.l_cut)
    lam = config.lambda0
    for _ in range(config.outer_iters):
        U = _Penalty(n, lam)
        z = _minimize(z, U, tracker, config)
        if radii is not None:
            radii.append(float(z[-1]))
        lam *= 0.5

    x_out, R_out = z[:-1].copy(), float(z[-1])
    x_out.setflags(write=False)
    sol = Solution(x_out, R_out, total_energy(x_out, R_out))
    report = check_feasibility(x_out, R_out, DEFAULT_TOL)
    if not report.feasible:
        raise AdjustmentFailed(sol, report)
    return sol
