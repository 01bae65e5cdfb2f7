"""Time integrators on top of the nodal operator u_I -> M u_I + q."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import linalg

from .collocation import AffineOperator
from .errors import BlowUpError

BLOWUP = 1e8


@dataclass
class EvolutionRun:
    """Inputs of one evolution: operator, initial interior state, step size,
    number of steps and the steps at which to record snapshots."""

    operator: AffineOperator
    u0: np.ndarray
    tau: float
    steps: int
    snapshot_steps: Sequence[int] = ()
    params: dict = field(default_factory=dict)
    v0: np.ndarray | None = None
    monitor: Callable | None = None

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("time step must be positive")
        if self.steps < 0:
            raise ValueError("number of steps must be non-negative")
        bad = [s for s in self.snapshot_steps if not 0 <= s <= self.steps]
        if bad:
            raise ValueError(f"snapshot steps {bad} outside the step grid")


@dataclass
class Snapshots:
    """Recorded full nodal states (interior and boundary) at selected times."""

    times: np.ndarray
    states: np.ndarray
    steps: np.ndarray
    monitor: list = field(default_factory=list)

    def at(self, step: int) -> np.ndarray:
        i = int(np.nonzero(self.steps == step)[0][0])
        return self.states[i]


class _Recorder:
    def __init__(self, run: EvolutionRun):
        self.run = run
        self.want = set(int(s) for s in run.snapshot_steps)
        self.steps, self.states, self.mon = [], [], []

    def __call__(self, n, u):
        if not np.all(np.isfinite(u)) or np.max(np.abs(u)) > BLOWUP:
            raise BlowUpError(f"state exploded at step {n} (t = {n * self.run.tau:g}); "
                              f"max |u| = {np.nanmax(np.abs(u)):.3g}")
        if n in self.want:
            self.steps.append(n)
            self.states.append(self.run.operator.full_state(u))
        if self.run.monitor is not None:
            self.mon.append(self.run.monitor(n, u))

    def result(self):
        steps = np.array(self.steps, dtype=int)
        return Snapshots(steps * self.run.tau, np.array(self.states), steps, self.mon)


def wave_central(run: EvolutionRun) -> Snapshots:
    """u_tt = -c^2 (-Delta)^(alpha/2) u by central differences in time.

    The first step is a second-order Taylor launch from (u0, v0).
    """
    op = run.operator
    c2 = run.params.get("c", 1.0) ** 2
    tau2 = run.tau ** 2
    v0 = np.zeros_like(run.u0) if run.v0 is None else run.v0
    rec = _Recorder(run)
    prev = np.array(run.u0, dtype=float)
    rec(0, prev)
    if run.steps == 0:
        return rec.result()
    cur = prev + run.tau * v0 - 0.5 * tau2 * c2 * op(prev)
    rec(1, cur)
    for n in range(2, run.steps + 1):
        prev, cur = cur, 2.0 * cur - prev - tau2 * c2 * op(cur)
        rec(n, cur)
    return rec.result()


def crank_nicolson(run: EvolutionRun) -> Snapshots:
    """u_t = -kappa (-Delta)^(alpha/2) u, trapezoidal in time.

    (I + tau kappa/2 M) u^{n+1} = (I - tau kappa/2 M) u^n - tau kappa q,
    with the left matrix factorized once.
    """
    op = run.operator
    kappa = run.params.get("kappa", 1.0)
    if kappa < 0:
        raise ValueError("diffusion coefficient must be non-negative")
    n = len(run.u0)
    s = 0.5 * run.tau * kappa
    lu = linalg.lu_factor(np.eye(n) + s * op.M)
    right = np.eye(n) - s * op.M
    shift = run.tau * kappa * op.q
    rec = _Recorder(run)
    u = np.array(run.u0, dtype=float)
    rec(0, u)
    for k in range(1, run.steps + 1):
        u = linalg.lu_solve(lu, right @ u - shift)
        rec(k, u)
    return rec.result()


def allen_cahn_rhs(op: AffineOperator, delta: float):
    inv = 1.0 / delta ** 2

    def rhs(u):
        return -op(u) - inv * u * (u * u - 1.0)
    return rhs


def rk4_allen_cahn(run: EvolutionRun) -> Snapshots:
    """u_t = -(-Delta)^(alpha/2) u - u (u^2 - 1) / delta^2 with classical RK4."""
    rhs = allen_cahn_rhs(run.operator, run.params.get("delta", 0.1))
    tau = run.tau
    rec = _Recorder(run)
    u = np.array(run.u0, dtype=float)
    rec(0, u)
    for n in range(1, run.steps + 1):
        k1 = rhs(u)
        k2 = rhs(u + 0.5 * tau * k1)
        k3 = rhs(u + 0.5 * tau * k2)
        k4 = rhs(u + tau * k3)
        u = u + tau / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rec(n, u)
    return rec.result()


def spectral_radius(op: AffineOperator) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(op.M))))
