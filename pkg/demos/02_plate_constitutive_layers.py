"""The plate constitutive algebra, layer by layer.

Shows the strain-displacement relation, the stiffness and compliance
forms inverting each other, the stress energy density as half the
internal work, and the thickness reconstruction satisfying the face
conditions exactly.
"""

import numpy as np

from cosserat_plate import (
    LoadSet,
    PlateKinematics,
    PlateStress,
    internal_work_density,
    material_from_technical,
    plate_energy_density,
    resultants_from_profiles,
    strain_from_kinematics,
    strain_from_stress,
    stress_from_kinematics,
    technical_constants,
    thickness_profiles,
)

rng = np.random.default_rng(7)
mat = material_from_technical(E=1.0, nu=0.3, N=0.6, l_t=0.08, l_b=0.07,
                              Psi=0.9, rho=1.0, J=(0.1, 0.1, 0.1))
tc = technical_constants(mat, h=0.1)

# A random mid-plane state and its in-plane gradients (pointwise values).
u = PlateKinematics(*rng.standard_normal(9))
d1 = PlateKinematics(*rng.standard_normal(9))
d2 = PlateKinematics(*rng.standard_normal(9))

strain = strain_from_kinematics(u, d1, d2)
stress = stress_from_kinematics(u, d1, d2, tc)
print("bending moments   M11, M12, M21, M22 =",
      [round(float(getattr(stress, n)), 5) for n in ("M11", "M12", "M21", "M22")])

# Compliance form: the exact inverse at zero loads.
back = strain_from_stress(stress, tc)
print("stiffness/compliance round trip error:",
      f"{np.max(np.abs(back.as_array() - strain.as_array())):.2e}")

# Energy density is half the internal work for any resultant set.
s = PlateStress(*rng.standard_normal(20))
phi = plate_energy_density(s, tc)
w3 = internal_work_density(s, strain_from_stress(s, tc))
print(f"Phi = {float(phi):.6f},  S.E/2 = {0.5 * float(w3):.6f}")

# Thickness reconstruction: polynomial profiles whose weighted integrals
# return the resultants, with the face conditions built in.
loads = LoadSet(p=0.5, sigma0=0.1, v=0.2, t=-0.3)
top = thickness_profiles(s, loads, tc.h, +1.0)
bot = thickness_profiles(s, loads, tc.h, -1.0)
print("sigma_33 at faces:", float(top.sigma[2, 2]), float(bot.sigma[2, 2]),
      " (sigma0 +- p/2 =", 0.1 + 0.25, 0.1 - 0.25, ")")
print("sigma_3beta at faces (exactly zero):",
      float(top.sigma[2, 0]), float(bot.sigma[2, 1]))

s_back = resultants_from_profiles(
    lambda z: thickness_profiles(s, loads, tc.h, z), tc.h
)
print("thickness round trip error:",
      f"{np.max(np.abs(s_back.as_array() - s.as_array())):.2e}")
