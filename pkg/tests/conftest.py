import numpy as np
from scipy.optimize import brentq

from lindlyap import (
    LindbladVector,
    QuadraticHamiltonian,
    build_dynamics,
    stability_check,
    thermal_bath,
)


def random_stable_model(rng, n=None, max_tries=60):
    """Draw a random asymptotically stable model with thermal damping on every mode."""
    if n is None:
        n = int(rng.integers(1, 4))
    for _ in range(max_tries):
        h = 0.35 * rng.normal(size=(2 * n, 2 * n))
        ham = QuadraticHamiltonian(0.5 * (h + h.T))
        vectors = []
        for mode in range(n):
            rate = float(rng.uniform(0.6, 1.8))
            occ = float(rng.uniform(0.0, 2.0))
            vectors.extend(thermal_bath(n, mode, rate, occ))
        extra = 0.3 * (rng.normal(size=2 * n) + 1j * rng.normal(size=2 * n))
        vectors.append(LindbladVector(extra))
        dyn = build_dynamics(ham, vectors)
        if stability_check(dyn).is_stable:
            return dyn
    raise RuntimeError("no asymptotically stable draw within the retry budget")


def random_physical_cm(rng, n):
    """Random covariance matrix with symplectic eigenvalues >= 1."""
    a = rng.normal(size=(2 * n, 2 * n))
    v = a @ a.T + np.eye(2 * n)
    # scale up until the uncertainty test matrix is PSD
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    while np.linalg.eigvalsh(v + 1j * j).min() < 0:
        v = 1.3 * v
    return v


def locate_flip(f, lo, hi, xtol=1e-10):
    """Zero of a scalar function via Brent bracketing."""
    return brentq(f, lo, hi, xtol=xtol)
