"""Spectral tests on stationary states and on the environment matrices that
generate them.

Every test has the same shape: a Hermitian test matrix Xi is fixed by the
criterion kind, and one asks whether V + Xi >= 0 (state level) or whether the
correspondingly shifted diffusion matrix is PSD (environment level).  State
level verdicts are two-sided; environment level verdicts are two-sided only
when the drift matrix is symmetric, otherwise positivity is merely sufficient
and a violated test is inconclusive.

Partitions split the n modes into part one and part two; part two is the set
whose momenta are flipped by the partial time reversal entering separability
and steerability tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    Definiteness,
    InertiaIndex,
    Tolerances,
    check_hermitian,
    inertia,
    psd_verdict,
    symplectic_form,
)
from .lyapunov import shifted_source, shifted_source_symmetric
from .model import GaussianDynamics, stability_check

__all__ = [
    "Level",
    "Verdict",
    "Conclusiveness",
    "Partition",
    "Uncertainty",
    "Classicality",
    "Separability",
    "Steerability",
    "CriterionResult",
    "xi_matrix",
    "state_criterion",
    "environment_criterion",
    "steerability_both_parts",
]


class Level(enum.Enum):
    STATE = "state"
    ENVIRONMENT = "environment"


class Verdict(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    MARGINAL = "marginal"


class Conclusiveness(enum.Enum):
    IFF = "iff_condition"
    SUFFICIENT_ONLY = "sufficient_only"


@dataclass(frozen=True)
class Partition:
    """Bipartition of n modes; flipped_modes is part two (0-based indices)."""

    mode_count: int
    flipped_modes: frozenset[int]

    def __post_init__(self):
        flipped = frozenset(int(k) for k in self.flipped_modes)
        if not flipped or len(flipped) >= self.mode_count:
            raise ValueError("part two must be a nonempty proper subset of the modes")
        if any(k < 0 or k >= self.mode_count for k in flipped):
            raise ValueError(f"mode indices must lie in [0, {self.mode_count})")
        object.__setattr__(self, "flipped_modes", flipped)

    @property
    def part_one(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.mode_count) if k not in self.flipped_modes)

    @property
    def part_two(self) -> tuple[int, ...]:
        return tuple(sorted(self.flipped_modes))

    def time_reversal(self) -> np.ndarray:
        """Diagonal matrix flipping the momenta of part two."""
        t = np.ones(2 * self.mode_count)
        for k in self.flipped_modes:
            t[self.mode_count + k] = -1.0
        return np.diag(t)


@dataclass(frozen=True)
class Uncertainty:
    name: str = field(default="uncertainty", init=False)


@dataclass(frozen=True)
class Classicality:
    name: str = field(default="classicality", init=False)


@dataclass(frozen=True)
class Separability:
    partition: Partition
    name: str = field(default="separability", init=False)


@dataclass(frozen=True)
class Steerability:
    """Test for steering of the given part (1 or 2) by the other part."""

    partition: Partition
    steered_part: int = 1
    name: str = field(default="steerability", init=False)

    def __post_init__(self):
        if self.steered_part not in (1, 2):
            raise ValueError(f"steered_part must be 1 or 2, got {self.steered_part}")


CriterionKind = Uncertainty | Classicality | Separability | Steerability


def _partial_form(n: int, flip: frozenset[int]) -> np.ndarray:
    # (J + T J T) / 2 with T flipping the momenta of `flip`
    t = np.ones(2 * n)
    for k in flip:
        t[n + k] = -1.0
    tmat = np.diag(t)
    j = symplectic_form(n)
    return 0.5 * (j + tmat @ j @ tmat)


def xi_matrix(kind: CriterionKind, n: int) -> np.ndarray:
    """Hermitian test matrix of a criterion on n modes."""
    if isinstance(kind, Uncertainty):
        return 1j * symplectic_form(n)
    if isinstance(kind, Classicality):
        return -np.eye(2 * n, dtype=complex)
    if isinstance(kind, Separability):
        part = kind.partition
        if part.mode_count != n:
            raise ValueError(f"partition is over {part.mode_count} modes, expected {n}")
        t = part.time_reversal()
        return 1j * (t @ symplectic_form(n) @ t)
    if isinstance(kind, Steerability):
        part = kind.partition
        if part.mode_count != n:
            raise ValueError(f"partition is over {part.mode_count} modes, expected {n}")
        steered = part.part_one if kind.steered_part == 1 else part.part_two
        unsteered = frozenset(range(n)) - frozenset(steered)
        return 1j * _partial_form(n, unsteered)
    raise TypeError(f"unknown criterion kind {kind!r}")


@dataclass(frozen=True)
class CriterionResult:
    """Spectral outcome of one criterion at one level."""

    kind: CriterionKind
    level: Level
    tested_matrix: np.ndarray
    spectrum: np.ndarray  # ascending, real
    inertia: InertiaIndex
    verdict: Verdict
    conclusiveness: Conclusiveness
    label: str = ""

    @property
    def conclusion(self) -> str:
        """Verdict with one-sidedness folded in: a violated sufficient test decides nothing."""
        if self.verdict is Verdict.VIOLATED and self.conclusiveness is Conclusiveness.SUFFICIENT_ONLY:
            return "inconclusive"
        return self.verdict.value


def _verdict_of(tested: np.ndarray, tol: Tolerances) -> tuple[Verdict, np.ndarray, InertiaIndex]:
    spectrum = np.linalg.eigvalsh(check_hermitian(tested, tol, what="tested matrix"))
    idx = inertia(tested, tol)
    kind = psd_verdict(tested, tol)
    verdict = {
        Definiteness.POSITIVE_DEFINITE: Verdict.HOLDS,
        Definiteness.POSITIVE_SEMIDEFINITE_MARGINAL: Verdict.MARGINAL,
        Definiteness.INDEFINITE: Verdict.VIOLATED,
    }[kind]
    return verdict, spectrum, idx


def _ppt_label(kind: CriterionKind, verdict: Verdict) -> str:
    # a passed transposition test on a many-vs-many split does not exclude bound entanglement
    if (
        isinstance(kind, Separability)
        and verdict is Verdict.HOLDS
        and min(len(kind.partition.part_one), len(kind.partition.part_two)) > 1
    ):
        return "PPT (separable or bound entangled)"
    return ""


def state_criterion(
    cm: np.ndarray, kind: CriterionKind, tol: Tolerances = DEFAULT_TOL
) -> CriterionResult:
    """Evaluate a criterion on a covariance matrix: tested matrix is cm + Xi."""
    v = np.asarray(cm, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] % 2:
        raise ValueError(f"covariance matrix must be 2n x 2n, got shape {v.shape}")
    dev = np.abs(v - v.T).max()
    if dev > tol.residual_tol * max(1.0, np.abs(v).max()):
        raise ValueError(f"covariance matrix must be symmetric, asymmetry {dev:.3e}")
    n = v.shape[0] // 2
    tested = v + xi_matrix(kind, n)
    verdict, spectrum, idx = _verdict_of(tested, tol)
    return CriterionResult(
        kind=kind,
        level=Level.STATE,
        tested_matrix=tested,
        spectrum=spectrum,
        inertia=idx,
        verdict=verdict,
        conclusiveness=Conclusiveness.IFF,
        label=_ppt_label(kind, verdict),
    )


def environment_criterion(
    dyn: GaussianDynamics, kind: CriterionKind, tol: Tolerances = DEFAULT_TOL
) -> CriterionResult:
    """Evaluate a criterion directly on the model, without solving for the state.

    The tested matrix is the diffusion matrix shifted by the criterion's Xi.
    For a symmetric drift matrix the symmetric shift applies and the test is
    two-sided; otherwise positivity is sufficient for the state-level property
    but a violation proves nothing.  The uncertainty kind reduces to twice the
    conjugate noise Gram matrix, which is PSD for every model, so its verdict
    is always "holds".
    """
    report = stability_check(dyn, tol)
    if not report.is_stable:
        raise ValueError(
            "environment criteria need an asymptotically stable drift matrix "
            f"(spectral abscissa {report.spectral_abscissa:.6e})"
        )
    n = dyn.n
    gamma = dyn.drift_matrix
    xi = xi_matrix(kind, n)

    if isinstance(kind, Uncertainty):
        tested = shifted_source(dyn.diffusion, gamma, xi, tol)
        gram_twice = 2.0 * dyn.noise_gram.conj()
        dev = np.abs(tested - gram_twice).max()
        scale = max(1.0, np.abs(gram_twice).max())
        if dev > tol.residual_tol * scale:
            raise RuntimeError(
                f"internal inconsistency: shifted diffusion deviates from twice the "
                f"conjugate noise Gram matrix by {dev:.3e}"
            )
        _, spectrum, idx = _verdict_of(tested, tol)
        if idx.negative:
            raise RuntimeError("noise Gram matrix has a negative eigenvalue beyond the zero band")
        return CriterionResult(
            kind=kind,
            level=Level.ENVIRONMENT,
            tested_matrix=tested,
            spectrum=spectrum,
            inertia=idx,
            verdict=Verdict.HOLDS,
            conclusiveness=Conclusiveness.IFF,
        )

    symmetric_drift = np.abs(gamma - gamma.T).max() <= tol.residual_tol * max(
        1.0, np.abs(gamma).max()
    )
    if symmetric_drift:
        tested = shifted_source_symmetric(dyn.diffusion, gamma, xi, tol)
        concl = Conclusiveness.IFF
    else:
        tested = shifted_source(dyn.diffusion, gamma, xi, tol)
        concl = Conclusiveness.SUFFICIENT_ONLY
    verdict, spectrum, idx = _verdict_of(tested, tol)
    return CriterionResult(
        kind=kind,
        level=Level.ENVIRONMENT,
        tested_matrix=tested,
        spectrum=spectrum,
        inertia=idx,
        verdict=verdict,
        conclusiveness=concl,
        label=_ppt_label(kind, verdict),
    )


def steerability_both_parts(
    target: GaussianDynamics | np.ndarray,
    partition: Partition,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[CriterionResult, CriterionResult]:
    """Steering tests in both directions: (part one steered, part two steered).

    Evaluates at the environment level when given a model and at the state
    level when given a covariance matrix.
    """
    results = []
    for steered in (1, 2):
        kind = Steerability(partition, steered)
        if isinstance(target, GaussianDynamics):
            results.append(environment_criterion(target, kind, tol))
        else:
            results.append(state_criterion(target, kind, tol))
    return tuple(results)
