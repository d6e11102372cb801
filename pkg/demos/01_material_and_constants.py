"""Material layer walkthrough: moduli, admissibility, derived constants.

A micropolar solid carries six elastic moduli.  This script builds a
material from engineering targets, checks the positivity conditions,
prints every derived constant the plate model uses, and shows the
compliance-form (reciprocal) moduli inverting the 3D law.
"""

import numpy as np

from cosserat_plate import (
    MaterialParams,
    Strain3D,
    material_from_technical,
    reciprocal_constants,
    strain_from_stress_3d,
    stress_from_strain_3d,
    technical_constants,
    validate_parameters,
)

# Engineering view: classical stiffness plus micropolar texture numbers.
mat = material_from_technical(
    E=3.0e9,        # Pa      (a stiff polymer)
    nu=0.34,
    N=0.5,          # coupling number: 0 = classical, -> 1 strongly coupled
    l_t=0.8e-3,     # m       characteristic length, torsion
    l_b=0.6e-3,     # m       characteristic length, bending
    Psi=1.2,        # polar ratio
    rho=1200.0,     # kg/m^3
    J=(2e-4, 2e-4, 2e-4),   # kg/m  rotatory microinertia
)
print("moduli:", mat)

report = validate_parameters(mat)
print("admissible:", report.admissible, report.violations)

# An inadmissible variant: the report names each violated inequality.
bad = MaterialParams(lam=mat.lam, mu=mat.mu, alpha=-1.0, beta=mat.beta,
                     gamma=mat.gamma, epsilon=mat.epsilon, rho=0.0,
                     J=(1, 1, 1))
print("broken material ->", validate_parameters(bad).violations)

h = 2e-3  # plate thickness [m]
tc = technical_constants(mat, h)
print(f"\nderived constants for h = {h} m:")
for name in ("E", "nu", "G", "D", "l_t", "l_b", "N", "Psi",
             "kappa1_sq", "kappa2_sq"):
    print(f"  {name:10} = {getattr(tc, name):.6g}")

# The reciprocal moduli give the exact inverse of the constitutive map.
rec = reciprocal_constants(mat)
rng = np.random.default_rng(0)
strain = Strain3D(gamma=rng.standard_normal((3, 3)),
                  chi=rng.standard_normal((3, 3)))
stress = stress_from_strain_3d(strain, mat)
back = strain_from_stress_3d(stress, rec)
err = np.max(np.abs(back.gamma - strain.gamma))
print(f"\n3D constitutive round trip error: {err:.2e}")
