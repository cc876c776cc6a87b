"""Building dissipators whose unique steady state is a prescribed target.

Two constructions.  The isotropic route drives every quadrature at rate 1/2
and shapes the noise as alpha * S S^T for a symplectic S, which parks the
state at exactly that matrix.  The covariant route takes any solved base
pair and transports it through a frame change, which reaches targets the
isotropic route cannot, including pure entangled states.  Both return a
concrete Hamiltonian-plus-jump-operator realization, not just matrices.
"""

import numpy as np

from lindlyap import (
    Partition,
    Separability,
    Steerability,
    catalog_analytic,
    catalog_build,
    engineer_covariant_target,
    engineer_gibbs_target,
    squeeze_transform,
    state_criterion,
    steady_covariance,
    symplectic_spectrum,
    williamson_decompose,
)

HALF = Partition(2, frozenset({1}))

# 1. isotropic route: a squeezed thermal target for two modes
r, nbar = 0.8, 0.25
res = engineer_gibbs_target(squeeze_transform(r / 2), 2 * nbar + 1)
want = (2 * nbar + 1) * squeeze_transform(r)  # squeeze(a) @ squeeze(b) = squeeze(a+b)
built = steady_covariance(res.realization.spec.build())
print(f"squeezed thermal target, r = {r}, occupation {nbar}:")
print(f"  drift matrix is -I/2: {np.abs(res.drift_matrix + 0.5 * np.eye(4)).max():.1e} away")
print(f"  jump operators used: {len(res.realization.vectors)}")
print(f"  |steady - target|_max = {np.abs(built - want).max():.3e}")
print(f"  stationary residual   = {res.residual:.3e}")

sep = state_criterion(built, Separability(HALF))
steer = state_criterion(built, Steerability(HALF, 1))
r_sep = catalog_analytic("TMTSS", "separability_flip", dict(r=r, nbar=nbar))
r_steer = catalog_analytic("TMTSS", "steerability_flip", dict(r=r, nbar=nbar))
print(f"  separability flips at r = {r_sep:.6f}, steering at r = {r_steer:.6f}")
print(f"  at r = {r}: separability {sep.verdict.value}, steering {steer.verdict.value}")

# 2. covariant route: the pure two-mode squeezed state of a balanced cascade
pure = catalog_analytic("CascadedOPO", "pure_cm", dict(epsilon1=0.3, epsilon2=-0.3, kappa=1.0))
dec = williamson_decompose(pure)
print(f"\npure cascade target, symplectic spectrum {symplectic_spectrum(pure).round(12)}")

# base pair: the same cascade with the drives off; vacuum solves it exactly
base = catalog_build("CascadedOPO", dict(epsilon1=0.0, epsilon2=0.0, kappa=1.0)).build()
res2 = engineer_covariant_target(np.eye(4), base.drift_matrix, base.diffusion, dec.s)
built2 = steady_covariance(res2.realization.spec.build())
print(f"  transported through the normal-form frame of the target itself")
print(f"  |target - pure_cm|_max = {np.abs(res2.target - pure).max():.3e}")
print(f"  |steady - target|_max  = {np.abs(built2 - res2.target).max():.3e}")

sep2 = state_criterion(built2, Separability(HALF))
print(f"  engineered state separability: {sep2.verdict.value} (min eig {sep2.spectrum.min():+.4f})")
print("  a pure entangled target is out of reach for the isotropic route,")
print("  but transport of a solved base pair lands on it exactly")
