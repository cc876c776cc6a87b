"""Continuous Lyapunov equations A P + P A^dag + Q = 0 and the shifted source
matrices used by the stationary-state criteria.

The primary solver vectorizes the equation into a dense linear system.  An
independent quadrature solver evaluates the integral representation
P = int_0^inf exp(A t) Q exp(A^dag t) dt and is kept deliberately separate so
the two routes can cross-check each other.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .core import DEFAULT_TOL, Tolerances, check_hermitian, hermitian_part
from .model import GaussianDynamics, stability_check

__all__ = [
    "LyapunovProblem",
    "steady_state_problem",
    "solve",
    "solve_integral",
    "residual",
    "steady_covariance",
    "shifted_source",
    "shifted_source_symmetric",
]


@dataclass(frozen=True)
class LyapunovProblem:
    """Data of A P + P A^dag + Q = 0: a stable generator and a Hermitian source."""

    generator: np.ndarray
    source: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.generator)
        q = np.asarray(self.source)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"generator must be square, got shape {a.shape}")
        if q.shape != a.shape:
            raise ValueError(f"source shape {q.shape} does not match generator shape {a.shape}")
        object.__setattr__(self, "generator", a)
        object.__setattr__(self, "source", q)


def steady_state_problem(dyn: GaussianDynamics) -> LyapunovProblem:
    """The covariance steady-state equation of a model: generator = drift, source = diffusion."""
    return LyapunovProblem(dyn.drift_matrix, dyn.diffusion)


def _as_problem(problem, source=None) -> LyapunovProblem:
    if isinstance(problem, LyapunovProblem):
        return problem
    return LyapunovProblem(problem, source)


def _require_stable(a: np.ndarray, tol: Tolerances) -> float:
    report = stability_check(a, tol)
    if not report.is_stable:
        raise ValueError(
            "Lyapunov solve needs an asymptotically stable generator "
            f"(spectral abscissa {report.spectral_abscissa:.6e})"
        )
    return report.spectral_abscissa


def solve(problem, source=None, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Solve A P + P A^dag + Q = 0 by vectorization.

    Accepts a LyapunovProblem or a (generator, source) pair.  The source must
    be Hermitian and the generator asymptotically stable; the unique solution
    is returned Hermitian (real when the inputs are real), after an explicit
    residual check.
    """
    prob = _as_problem(problem, source)
    a = prob.generator
    q = check_hermitian(prob.source, tol, what="source")
    _require_stable(a, tol)

    dim = a.shape[0]
    eye = np.eye(dim)
    big = np.kron(eye, a) + np.kron(a.conj(), eye)
    vec = np.linalg.solve(big, -q.reshape(-1, order="F").astype(complex))
    p = hermitian_part(vec.reshape((dim, dim), order="F"))

    scale = np.abs(q).max() or 1.0
    res = np.abs(a @ p + p @ a.conj().T + q).max()
    if res > tol.residual_tol * scale:
        raise ValueError(f"Lyapunov residual {res:.3e} exceeds tolerance on scale {scale:.3e}")
    if np.isrealobj(a) and np.isrealobj(prob.source):
        return p.real
    return p


def solve_integral(
    problem,
    source=None,
    horizon: float | None = None,
    steps: int = 2400,
    tol: Tolerances = DEFAULT_TOL,
) -> np.ndarray:
    """Quadrature solution of the same equation via its integral representation.

    Integrates exp(A t) Q exp(A^dag t) over [0, horizon] with composite Simpson
    weights; the propagator over one step is computed once and the integrand is
    advanced by congruence, so only a single matrix exponential is needed.  The
    default horizon 40 / |spectral abscissa| makes the discarded tail
    negligible; a warning is issued if the integrand has not decayed at the
    endpoint.  Independent of :func:`solve` by construction.
    """
    prob = _as_problem(problem, source)
    a = prob.generator
    q = check_hermitian(prob.source, tol, what="source")
    abscissa = _require_stable(a, tol)
    if horizon is None:
        horizon = 40.0 / abs(abscissa)
    if steps % 2:
        steps += 1

    h = horizon / steps
    step_prop = expm(a * h)
    node = q.astype(complex)
    acc = node.copy()  # weight 1 at t = 0
    for k in range(1, steps):
        node = step_prop @ node @ step_prop.conj().T
        acc += (4.0 if k % 2 else 2.0) * node
    node = step_prop @ node @ step_prop.conj().T
    acc += node

    tail = np.abs(node).max()
    scale = np.abs(q).max() or 1.0
    if tail > tol.residual_tol * scale:
        warnings.warn(
            f"integrand norm {tail:.3e} at the horizon has not decayed below "
            f"{tol.residual_tol:.1e} of the source scale; increase the horizon",
            RuntimeWarning,
            stacklevel=2,
        )
    p = hermitian_part(acc * (h / 3.0))
    if np.isrealobj(a) and np.isrealobj(prob.source):
        return p.real
    return p


def residual(problem, p: np.ndarray, source=None) -> float:
    """Max-norm residual ||A P + P A^dag + Q||_inf of a candidate solution."""
    prob = _as_problem(problem, source)
    a = prob.generator
    q = prob.source
    return float(np.abs(a @ p + p @ a.conj().T + q).max())


def steady_covariance(dyn: GaussianDynamics, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Stationary covariance matrix of a stable model."""
    return solve(steady_state_problem(dyn), tol=tol)


def shifted_source(source, generator, shift, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Source matrix shifted by a Hermitian test matrix: Q - Xi A^dag - A Xi.

    Solving with the shifted source returns P + Xi, so positivity of the
    shifted source certifies P + Xi >= 0 for any stable generator.
    """
    q = np.asarray(source)
    a = np.asarray(generator)
    xi = check_hermitian(np.asarray(shift), tol, what="shift")
    return q - xi @ a.conj().T - a @ xi


def shifted_source_symmetric(source, generator, shift, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Symmetric-generator variant of the shifted source: Q - Xi A - A Xi.

    Only defined for self-adjoint generators, where it coincides with a
    congruence-transformed source and its positivity becomes a two-sided test.
    """
    a = np.asarray(generator)
    dev = np.abs(a - a.conj().T).max()
    if dev > tol.residual_tol * max(1.0, np.abs(a).max()):
        raise ValueError(
            f"symmetric-shift form needs a self-adjoint generator, deviation {dev:.3e}"
        )
    q = np.asarray(source)
    xi = check_hermitian(np.asarray(shift), tol, what="shift")
    return q - xi @ a - a @ xi
