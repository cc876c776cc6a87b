"""Frame-change symmetries and what they force on the steady state.

If an invertible W fixes both the drift matrix (by similarity) and the
diffusion matrix (by congruence), the unique stationary covariance of a
stable model must satisfy W V W^T = V.  That confinement can be checked
before ever solving anything, and special reservoirs go further: an
isotropic pair pins the steady state to a multiple of the identity.
"""

import numpy as np
from scipy.linalg import block_diag

from lindlyap import (
    CovarianceTransform,
    QuadraticHamiltonian,
    StructureTemplate,
    build_dynamics,
    catalog_build,
    gibbs_condition,
    invariance_check,
    match_template,
    steady_covariance,
    symplectic_form,
    thermal_bath,
    transform_triple,
)

# 1. a number-conserving pair is invariant under the symplectic form itself
dyn = catalog_build(
    "TwoOscRWA",
    dict(varpi=0.9, Omega=0.25, zeta1=0.3, zeta2=0.5, nbar1=0.6, nbar2=0.1),
).build()
w = CovarianceTransform(symplectic_form(2))
rep = invariance_check(dyn.drift_matrix, dyn.diffusion, w.matrix)
print("rotating-wave pair under W = J (quarter-turn in every mode):")
print(f"  W orthogonal: {w.is_orthogonal}, symplectic: {w.is_symplectic}")
print(f"  drift invariant: {rep.gamma_invariant}, diffusion invariant: {rep.diffusion_invariant}")
print(f"  covariance invariance implied: {rep.cm_invariant}")

cm = steady_covariance(dyn)
print("  steady state fits templates:")
for tpl in (StructureTemplate.J_INVARIANT, StructureTemplate.BLOCK_DIAGONAL_QP):
    print(f"    {tpl.value:<22s} {match_template(cm, tpl)}")

# 2. identical oscillators with identical baths are swap symmetric
swap = np.array([[0.0, 1.0], [1.0, 0.0]])
w_swap = block_diag(swap, swap)  # exchanges modes in q and in p
sym = catalog_build(
    "TwoOscThermal", dict(omega=0.5, kappa=1.0, zeta=0.7, nbar=0.3)
).build()
rep = invariance_check(sym.drift_matrix, sym.diffusion, w_swap)
cm = steady_covariance(sym)
_, _, cm_t = transform_triple(sym.drift_matrix, sym.diffusion, w_swap, cm)
print("\nidentical oscillator pair under mode exchange:")
print(f"  drift invariant: {rep.gamma_invariant}, diffusion invariant: {rep.diffusion_invariant}")
print(f"  |W V W^T - V|_max = {np.abs(cm_t - cm).max():.3e}")

# unequal occupations keep the drift but break the diffusion
broken = catalog_build(
    "TwoOscThermal",
    dict(omega=0.5, kappa=1.0, zeta=0.7, nbar1=0.8, nbar2=0.1),
).build()
rep = invariance_check(broken.drift_matrix, broken.diffusion, w_swap)
print("  with nbar1 != nbar2:")
print(f"  drift invariant: {rep.gamma_invariant}, diffusion invariant: {rep.diffusion_invariant}")

# 3. an isotropic reservoir pins the steady state to alpha * identity
single = build_dynamics(QuadraticHamiltonian(np.zeros((2, 2))), thermal_bath(1, 0, 0.7, 0.4))
alpha = gibbs_condition(single)
print("\nisotropic-reservoir detection:")
print(f"  one mode, one thermal contact (occupation 0.4): alpha = {alpha}")
print(f"  steady covariance: {np.array_str(steady_covariance(single), precision=6)}")

chain = gibbs_condition(sym)
print(f"  coupled oscillator chain: {chain}  (coupling spoils isotropy)")
tmtss = catalog_build("TMTSS", dict(r=0.7, nbar=0.5)).build()
print(f"  squeezed two-mode reservoir: {gibbs_condition(tmtss)}  (target is squeezed, not isotropic)")
