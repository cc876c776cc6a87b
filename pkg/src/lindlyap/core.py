"""Shared linear-algebra primitives: phase-space conventions, inertia counts,
definiteness verdicts, and tolerance handling.

Phase-space vectors are ordered as x = (q_1, ..., q_n, p_1, ..., p_n): all
positions first, then all momenta.  Helpers are provided to convert to and
from the interleaved ordering (q_1, p_1, q_2, p_2, ...).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerances",
    "Layout",
    "InertiaIndex",
    "Definiteness",
    "symplectic_form",
    "reorder",
    "hermitian_part",
    "check_hermitian",
    "inertia",
    "psd_verdict",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the package.

    eig_zero_band: relative half-width of the band around zero inside which an
        eigenvalue counts as zero.  The absolute band is
        eig_zero_band * max(1, max |eigenvalue|) of the matrix at hand.
    stability_margin: a spectral abscissa must lie below -stability_margin for
        a generator to count as asymptotically stable.
    residual_tol: relative tolerance on equation residuals (Lyapunov solves,
        Hermiticity checks, reconstruction identities).
    """

    eig_zero_band: float = 1e-9
    stability_margin: float = 1e-10
    residual_tol: float = 1e-8

    def scaled(self, factor: float) -> "Tolerances":
        """A copy with every tolerance multiplied by ``factor``."""
        return Tolerances(
            eig_zero_band=self.eig_zero_band * factor,
            stability_margin=self.stability_margin * factor,
            residual_tol=self.residual_tol * factor,
        )


DEFAULT_TOL = Tolerances()


class Layout(enum.Enum):
    """Orderings of the 2n phase-space coordinates."""

    BLOCK_QP = "block_qp"  # (q_1..q_n, p_1..p_n)
    INTERLEAVED_QP = "interleaved_qp"  # (q_1, p_1, q_2, p_2, ...)


def symplectic_form(n: int) -> np.ndarray:
    """Return the 2n x 2n symplectic form J = [[0, I], [-I, 0]] (block layout)."""
    if n < 1:
        raise ValueError(f"need at least one mode, got n={n}")
    z = np.zeros((n, n))
    i = np.eye(n)
    return np.block([[z, i], [-i, z]])


def _block_to_interleaved_perm(n: int) -> np.ndarray:
    # perm[k] = index in block layout of the k-th interleaved coordinate
    perm = np.empty(2 * n, dtype=int)
    perm[0::2] = np.arange(n)
    perm[1::2] = np.arange(n) + n
    return perm


def reorder(m: np.ndarray, src: Layout, dst: Layout) -> np.ndarray:
    """Re-index a 2n-vector or 2n x 2n matrix between coordinate layouts."""
    m = np.asarray(m)
    if m.shape[0] % 2:
        raise ValueError(f"phase-space dimension must be even, got {m.shape[0]}")
    if src == dst:
        return m.copy()
    n = m.shape[0] // 2
    perm = _block_to_interleaved_perm(n)
    if src == Layout.BLOCK_QP:
        take = perm
    else:
        take = np.argsort(perm)
    if m.ndim == 1:
        return m[take]
    if m.ndim == 2 and m.shape[0] == m.shape[1]:
        return m[np.ix_(take, take)]
    raise ValueError(f"expected a 2n vector or 2n x 2n matrix, got shape {m.shape}")


def hermitian_part(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    return 0.5 * (m + m.conj().T)


def check_hermitian(m: np.ndarray, tol: Tolerances = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    """Validate that ``m`` is Hermitian within tolerance and return its Hermitian part.

    The deviation is measured as ||m - m^dag||_inf relative to max(1, ||m||_inf).
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{what} must be square, got shape {m.shape}")
    dev = np.abs(m - m.conj().T).max()
    scale = max(1.0, np.abs(m).max()) if m.size else 1.0
    if dev > tol.residual_tol * scale:
        raise ValueError(
            f"{what} is not Hermitian: ||m - m^dag||_inf = {dev:.3e} "
            f"exceeds {tol.residual_tol:.1e} * {scale:.3e}"
        )
    return hermitian_part(m)


@dataclass(frozen=True)
class InertiaIndex:
    """Signature of a Hermitian matrix: eigenvalue counts by sign."""

    positive: int
    zero: int
    negative: int

    @property
    def total(self) -> int:
        return self.positive + self.zero + self.negative

    def __str__(self) -> str:
        return f"(+{self.positive}, 0:{self.zero}, -{self.negative})"


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE_MARGINAL = "positive_semidefinite_marginal"
    INDEFINITE = "indefinite"


def inertia(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> InertiaIndex:
    """Count positive, zero, and negative eigenvalues of a Hermitian matrix.

    Eigenvalues within eig_zero_band * max(1, max |eig|) of zero count as zero.
    Raises ValueError if ``m`` is not Hermitian within residual_tol.
    """
    h = check_hermitian(m, tol)
    eig = np.linalg.eigvalsh(h)
    band = tol.eig_zero_band * max(1.0, np.abs(eig).max() if eig.size else 0.0)
    return InertiaIndex(
        positive=int(np.sum(eig > band)),
        zero=int(np.sum(np.abs(eig) <= band)),
        negative=int(np.sum(eig < -band)),
    )


def psd_verdict(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> Definiteness:
    """Classify a Hermitian matrix as PD, marginally PSD, or indefinite.

    Marginal means no eigenvalue below the zero band but at least one inside it.
    """
    idx = inertia(m, tol)
    if idx.negative > 0:
        return Definiteness.INDEFINITE
    if idx.zero > 0:
        return Definiteness.POSITIVE_SEMIDEFINITE_MARGINAL
    return Definiteness.POSITIVE_DEFINITE
