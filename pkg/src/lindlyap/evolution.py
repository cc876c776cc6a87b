"""Time integration of the first and second moment equations.

Fixed-step classical Runge-Kutta on the coupled linear system
xbar' = Gamma xbar + drive, V' = Gamma V + V Gamma^T + D.  The covariance is
re-symmetrized after every step so roundoff cannot accumulate asymmetry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Tolerances
from .model import GaussianDynamics

__all__ = ["Trajectory", "evolve"]


@dataclass(frozen=True)
class Trajectory:
    """Recorded moments at increasing times (first axis indexes time)."""

    times: np.ndarray
    means: np.ndarray  # shape (len(times), 2n)
    cms: np.ndarray  # shape (len(times), 2n, 2n)

    @property
    def final_mean(self) -> np.ndarray:
        return self.means[-1]

    @property
    def final_cm(self) -> np.ndarray:
        return self.cms[-1]


def _rates(dyn: GaussianDynamics, x: np.ndarray, v: np.ndarray):
    gv = dyn.drift_matrix @ v
    return dyn.drift_matrix @ x + dyn.drive, gv + gv.T + dyn.diffusion


def evolve(
    dyn: GaussianDynamics,
    x0: np.ndarray,
    v0: np.ndarray,
    t_end: float,
    dt: float | None = None,
    record_every: int = 1,
    tol: Tolerances = DEFAULT_TOL,
) -> Trajectory:
    """Integrate the moment equations from (x0, v0) up to t_end.

    The default step is min(1e-3, 0.05 / ||Gamma||_2), small enough that the
    fourth-order local error is far below the solver tolerances for the decay
    rates handled here.  States are recorded every `record_every` steps (the
    final state is always recorded).  Aborts if any moment stops being finite.
    """
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if record_every < 1:
        raise ValueError(f"record_every must be >= 1, got {record_every}")
    x = np.asarray(x0, dtype=float).copy()
    v = np.asarray(v0, dtype=float)
    dim = dyn.drift_matrix.shape[0]
    if x.shape != (dim,):
        raise ValueError(f"x0 must have shape ({dim},), got {x.shape}")
    if v.shape != (dim, dim):
        raise ValueError(f"v0 must have shape ({dim}, {dim}), got {v.shape}")
    v = 0.5 * (v + v.T)

    if dt is None:
        dt = min(1e-3, 0.05 / max(np.linalg.norm(dyn.drift_matrix, 2), 1e-12))
    steps = max(1, int(np.ceil(t_end / dt)))
    h = t_end / steps

    times = [0.0]
    means = [x.copy()]
    cms = [v.copy()]
    for k in range(1, steps + 1):
        kx1, kv1 = _rates(dyn, x, v)
        kx2, kv2 = _rates(dyn, x + 0.5 * h * kx1, v + 0.5 * h * kv1)
        kx3, kv3 = _rates(dyn, x + 0.5 * h * kx2, v + 0.5 * h * kv2)
        kx4, kv4 = _rates(dyn, x + h * kx3, v + h * kv3)
        x = x + (h / 6.0) * (kx1 + 2 * kx2 + 2 * kx3 + kx4)
        v = v + (h / 6.0) * (kv1 + 2 * kv2 + 2 * kv3 + kv4)
        v = 0.5 * (v + v.T)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise RuntimeError(f"moments diverged at step {k} (t = {k * h:.6g})")
        if k % record_every == 0 or k == steps:
            times.append(k * h)
            means.append(x.copy())
            cms.append(v.copy())

    return Trajectory(times=np.array(times), means=np.array(means), cms=np.array(cms))
