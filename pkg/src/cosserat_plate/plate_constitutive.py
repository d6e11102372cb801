"""Plate-level constitutive algebra.

Four mutually consistent layers, each implemented independently and
reconciled by the verification suite:

* strain-displacement: PlateStrain from the kinematic fields and their
  in-plane gradients;
* stiffness form: resultants from kinematics (used by the solvers);
* compliance form: strains from resultants (the gradient of the stress
  energy), with the load-coupled affine terms;
* stress energy density Phi and the internal work density.

Sign convention: the Levi-Civita couplings are fixed so that the stiffness
and compliance forms are exact inverses at zero loads, the flexural and
extensional operators assembled from them are conservative (symmetric
principal part, antisymmetric odd part), and a rigid plate motion,
including the matching rigid microrotation, produces zero strain.  Where a
published variant of a formula differs from this consistent set, the
difference is reported by the verification diff table rather than silently
merged.

The compliance for the bending couple e_aa couples to div Q*; both
``strain_from_stress`` and ``plate_energy_density`` take that divergence as
an explicit input (``div_qs``) so every map here stays pointwise.  In
static equilibrium div Q* = -p.

All operations broadcast over array-valued fields and are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .material import MaterialError, TechnicalConstants
from .plate_fields import (
    LoadSet,
    PlateKinematics,
    PlateStrain,
    PlateStress,
)

# Gauss-Legendre rule on [-1, 1]; exact through degree 15, far beyond the
# cubic thickness profiles.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


# ---------------------------------------------------------------------------
# strain-displacement
# ---------------------------------------------------------------------------

def strain_from_kinematics(
    u: PlateKinematics, d1: PlateKinematics, d2: PlateKinematics
) -> PlateStrain:
    """Cosserat plate strain-displacement relation.

    ``d1`` and ``d2`` carry the x1- and x2-derivatives of every field of
    ``u`` (same container type, derivative values in the slots).
    """
    return PlateStrain(
        e11=d1.psi1,
        e12=d1.psi2 + u.omega3,
        e21=d2.psi1 - u.omega3,
        e22=d2.psi2,
        omega1=u.psi1 + u.omega2_0,
        omega2=u.psi2 - u.omega1_0,
        omega1_s=d1.w - u.omega2_0,
        omega2_s=d2.w + u.omega1_0,
        tau31=d1.omega3,
        tau32=d2.omega3,
        tau11_0=d1.omega1_0,
        tau12_0=d1.omega2_0,
        tau21_0=d2.omega1_0,
        tau22_0=d2.omega2_0,
        upsilon11=d1.u1,
        upsilon12=d1.u2 + u.omega3_0,
        upsilon21=d2.u1 - u.omega3_0,
        upsilon22=d2.u2,
        tau31_0=d1.omega3_0,
        tau32_0=d2.omega3_0,
    )


# ---------------------------------------------------------------------------
# stiffness form
# ---------------------------------------------------------------------------

def stress_from_kinematics(
    u: PlateKinematics,
    d1: PlateKinematics,
    d2: PlateKinematics,
    tc: TechnicalConstants,
    loads: LoadSet | None = None,
) -> PlateStress:
    """Resultants from kinematics, including the face-load terms."""
    if loads is None:
        loads = LoadSet.zero()
    h = tc.h
    mu, alpha = tc.mu, tc.alpha
    gam, eps = tc.gamma, tc.epsilon
    D, nu = tc.D, tc.nu
    cq = tc.kappa1_sq * h          # transverse-shear block weight
    cr = tc.kappa2_sq * h          # micropolar-moment block weight
    cm = h**3 / 12.0
    c_p = nu * h**2 / (10.0 * (1.0 - nu)) * loads.p
    c_t = 0.5 * cr * (1.0 - tc.Psi) * loads.t
    c_s = h * nu / (1.0 - nu) * loads.sigma0

    return PlateStress(
        M11=D * (d1.psi1 + nu * d2.psi2) + c_p,
        M22=D * (d2.psi2 + nu * d1.psi1) + c_p,
        M12=cm * ((mu + alpha) * d1.psi2 + (mu - alpha) * d2.psi1)
        + 2.0 * cm * alpha * u.omega3,
        M21=cm * ((mu + alpha) * d2.psi1 + (mu - alpha) * d1.psi2)
        - 2.0 * cm * alpha * u.omega3,
        Q1=cq * ((mu + alpha) * u.psi1 + (mu - alpha) * d1.w)
        + 2.0 * cq * alpha * u.omega2_0,
        Q2=cq * ((mu + alpha) * u.psi2 + (mu - alpha) * d2.w)
        - 2.0 * cq * alpha * u.omega1_0,
        Q1_s=cq * ((mu - alpha) * u.psi1 + (mu + alpha) * d1.w)
        - 2.0 * cq * alpha * u.omega2_0,
        Q2_s=cq * ((mu - alpha) * u.psi2 + (mu + alpha) * d2.w)
        + 2.0 * cq * alpha * u.omega1_0,
        R11=cr * gam * ((2.0 - tc.Psi) * d1.omega1_0 + (1.0 - tc.Psi) * d2.omega2_0)
        + c_t,
        R22=cr * gam * ((2.0 - tc.Psi) * d2.omega2_0 + (1.0 - tc.Psi) * d1.omega1_0)
        + c_t,
        R12=0.5 * cr * ((gam + eps) * d1.omega2_0 + (gam - eps) * d2.omega1_0),
        R21=0.5 * cr * ((gam + eps) * d2.omega1_0 + (gam - eps) * d1.omega2_0),
        S1_s=h**3 * gam * eps / (3.0 * (gam + eps)) * d1.omega3,
        S2_s=h**3 * gam * eps / (3.0 * (gam + eps)) * d2.omega3,
        N11=tc.E * h / (1.0 - nu**2) * (d1.u1 + nu * d2.u2) + c_s,
        N22=tc.E * h / (1.0 - nu**2) * (d2.u2 + nu * d1.u1) + c_s,
        N12=h * ((mu + alpha) * d1.u2 + (mu - alpha) * d2.u1)
        + 2.0 * h * alpha * u.omega3_0,
        N21=h * ((mu + alpha) * d2.u1 + (mu - alpha) * d1.u2)
        - 2.0 * h * alpha * u.omega3_0,
        M1_s=4.0 * h * gam * eps / (gam + eps) * d1.omega3_0,
        M2_s=4.0 * h * gam * eps / (gam + eps) * d2.omega3_0,
    )


# ---------------------------------------------------------------------------
# compliance form
# ---------------------------------------------------------------------------

def _compliance_coeffs(tc: TechnicalConstants):
    h = tc.h
    m = tc.material
    lam, mu, alpha = m.lam, m.mu, m.alpha
    beta, gam, eps = m.beta, m.gamma, m.epsilon
    d3 = 3.0 * lam + 2.0 * mu
    b3 = 3.0 * beta + 2.0 * gam
    return {
        "A_M": 12.0 * (lam + mu) / (h**3 * mu * d3),
        "B_M": -6.0 * lam / (h**3 * mu * d3),
        "d_M": 3.0 * lam / (5.0 * h * mu * d3),
        "C_Mx": 3.0 / (h**3 * alpha * mu),
        "c_Q": 3.0 / (10.0 * h * alpha * mu),
        "A_R": 6.0 * (beta + gam) / (5.0 * h * gam * b3),
        "B_R": -3.0 * beta / (5.0 * h * gam * b3),
        "c_Rt": beta / (2.0 * gam * b3),
        "C_Rx": 3.0 / (10.0 * h * gam * eps),
        "c_S": 3.0 * (gam + eps) / (h**3 * gam * eps),
        "A_N": (lam + mu) / (h * mu * d3),
        "B_N": -lam / (2.0 * h * mu * d3),
        "c_sig": lam / (2.0 * mu * d3),
        "C_Nx": 1.0 / (4.0 * h * alpha * mu),
        "c_Ms": (gam + eps) / (4.0 * h * gam * eps),
    }


def strain_from_stress(
    s: PlateStress,
    tc: TechnicalConstants,
    loads: LoadSet | None = None,
    div_qs=0.0,
) -> PlateStrain:
    """Compliance form: the gradient of Phi with respect to the resultants.

    ``div_qs`` supplies Q*_b,b where the bending-couple relation requires
    it; the caller differentiates (the map itself is pointwise).
    """
    if loads is None:
        loads = LoadSet.zero()
    m = tc.material
    if not (m.alpha > 0 and m.mu > 0 and m.gamma > 0 and m.epsilon > 0):
        raise MaterialError("compliance requires admissible moduli")
    c = _compliance_coeffs(tc)
    mu, alpha = m.mu, m.alpha
    gam, eps = m.gamma, m.epsilon

    return PlateStrain(
        e11=c["A_M"] * s.M11 + c["B_M"] * s.M22 + c["d_M"] * div_qs,
        e22=c["A_M"] * s.M22 + c["B_M"] * s.M11 + c["d_M"] * div_qs,
        e12=c["C_Mx"] * ((alpha + mu) * s.M12 + (alpha - mu) * s.M21),
        e21=c["C_Mx"] * ((alpha + mu) * s.M21 + (alpha - mu) * s.M12),
        omega1=c["c_Q"] * ((alpha + mu) * s.Q1 + (alpha - mu) * s.Q1_s),
        omega2=c["c_Q"] * ((alpha + mu) * s.Q2 + (alpha - mu) * s.Q2_s),
        omega1_s=c["c_Q"] * ((alpha - mu) * s.Q1 + (alpha + mu) * s.Q1_s),
        omega2_s=c["c_Q"] * ((alpha - mu) * s.Q2 + (alpha + mu) * s.Q2_s),
        tau11_0=c["A_R"] * s.R11 + c["B_R"] * s.R22 - c["c_Rt"] * loads.t,
        tau22_0=c["A_R"] * s.R22 + c["B_R"] * s.R11 - c["c_Rt"] * loads.t,
        tau12_0=c["C_Rx"] * ((gam + eps) * s.R12 + (eps - gam) * s.R21),
        tau21_0=c["C_Rx"] * ((gam + eps) * s.R21 + (eps - gam) * s.R12),
        tau31=c["c_S"] * s.S1_s,
        tau32=c["c_S"] * s.S2_s,
        upsilon11=c["A_N"] * s.N11 + c["B_N"] * s.N22 - c["c_sig"] * loads.sigma0,
        upsilon22=c["A_N"] * s.N22 + c["B_N"] * s.N11 - c["c_sig"] * loads.sigma0,
        upsilon12=c["C_Nx"] * ((alpha + mu) * s.N12 + (alpha - mu) * s.N21),
        upsilon21=c["C_Nx"] * ((alpha + mu) * s.N21 + (alpha - mu) * s.N12),
        tau31_0=c["c_Ms"] * s.M1_s,
        tau32_0=c["c_Ms"] * s.M2_s,
    )


# ---------------------------------------------------------------------------
# energy and work densities
# ---------------------------------------------------------------------------

def plate_energy_density(
    s: PlateStress,
    tc: TechnicalConstants,
    loads: LoadSet | None = None,
    div_qs=0.0,
):
    """Plate stress energy density Phi(S): all quadratic resultant groups
    plus the load-coupling and pure-load terms (sigma0^2, t^2, v^2)."""
    if loads is None:
        loads = LoadSet.zero()
    m = tc.material
    h = tc.h
    lam, mu, alpha = m.lam, m.mu, m.alpha
    beta, gam, eps = m.beta, m.gamma, m.epsilon
    d3 = 3.0 * lam + 2.0 * mu
    b3 = 3.0 * beta + 2.0 * gam

    phi = (lam + mu) / (2.0 * h * mu * d3) * (
        s.N11**2 + s.N22**2 + 12.0 / h**2 * (s.M11**2 + s.M22**2)
    )
    phi = phi - lam / (2.0 * h * mu * d3) * (
        s.N11 * s.N22 + 12.0 / h**2 * s.M11 * s.M22
    )
    phi = phi + (alpha + mu) / (8.0 * h * alpha * mu) * (
        s.N12**2 + s.N21**2
        + 12.0 / h**2 * (s.M12**2 + s.M21**2)
        + 1.2 * (s.Q1**2 + s.Q2**2 + s.Q1_s**2 + s.Q2_s**2)
    )
    phi = phi + 3.0 * (alpha - mu) / (10.0 * h * alpha * mu) * (
        s.Q1 * s.Q1_s + s.Q2 * s.Q2_s
        + 5.0 / 6.0 * s.N12 * s.N21
        + 10.0 / h**2 * s.M12 * s.M21
    )
    phi = phi + 3.0 * lam / (5.0 * h * mu * d3) * div_qs * (s.M11 + s.M22)
    phi = phi + 3.0 / (5.0 * h * gam * b3) * (
        (beta + gam) * (s.R11**2 + s.R22**2) - beta * s.R11 * s.R22
    )
    phi = phi + 3.0 / (10.0 * h) * (1.0 / gam - 1.0 / eps) * s.R12 * s.R21
    phi = phi + 17.0 * h * (lam + mu) / (280.0 * mu * d3) * div_qs**2
    phi = phi - lam / (2.0 * mu * d3) * (s.N11 + s.N22) * loads.sigma0
    phi = phi + h * (lam + mu) / (2.0 * mu * d3) * loads.sigma0**2
    phi = phi + (gam + eps) / (h * gam * eps) * (
        0.125 * (s.M1_s**2 + s.M2_s**2)
        + 1.5 / h**2 * (s.S1_s**2 + s.S2_s**2)
        + 0.15 * (s.R12**2 + s.R21**2)
    )
    phi = phi - beta / (2.0 * gam * b3) * (s.R11 + s.R22) * loads.t
    phi = phi + h * (beta + gam) / (2.0 * gam * b3) * loads.t**2
    phi = phi + h * (beta + gam) / (6.0 * gam * b3) * loads.v**2
    return phi


def internal_work_density(s: PlateStress, e: PlateStrain):
    """W3 = S . E, the work of the resultants over the plate strain set."""
    pairs = (
        (s.M11, e.e11), (s.M12, e.e12), (s.M21, e.e21), (s.M22, e.e22),
        (s.Q1, e.omega1), (s.Q2, e.omega2),
        (s.Q1_s, e.omega1_s), (s.Q2_s, e.omega2_s),
        (s.R11, e.tau11_0), (s.R12, e.tau12_0),
        (s.R21, e.tau21_0), (s.R22, e.tau22_0),
        (s.S1_s, e.tau31), (s.S2_s, e.tau32),
        (s.N11, e.upsilon11), (s.N12, e.upsilon12),
        (s.N21, e.upsilon21), (s.N22, e.upsilon22),
        (s.M1_s, e.tau31_0), (s.M2_s, e.tau32_0),
    )
    total = 0.0
    for a, b in pairs:
        total = total + np.asarray(a) * np.asarray(b)
    return total


# ---------------------------------------------------------------------------
# thickness profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThicknessProfiles:
    """Pointwise 3D stress components at a scaled thickness coordinate
    zeta3 = 2 x3 / h in [-1, 1].  Components indexed {t_ji}."""

    sigma: np.ndarray       # (..., 3, 3)
    mu_c: np.ndarray        # (..., 3, 3)


def thickness_profiles(
    s: PlateStress, loads: LoadSet, h: float, zeta3: float
) -> ThicknessProfiles:
    """Reconstruct the assumed polynomial stress distributions from the
    resultants.  The face conditions hold exactly: sigma_33(+-1) equals the
    top/bottom transverse stress, sigma_3b(+-1) = 0 and mu_3b = 0."""
    z = float(zeta3)
    if abs(z) > 1.0:
        raise MaterialError(f"zeta3 must lie in [-1, 1], got {zeta3}")

    n = {  # profile densities inverted from the resultant integrals
        "n11": s.N11 / h, "n12": s.N12 / h, "n21": s.N21 / h, "n22": s.N22 / h,
        "m11": 12.0 * s.M11 / h**3, "m12": 12.0 * s.M12 / h**3,
        "m21": 12.0 * s.M21 / h**3, "m22": 12.0 * s.M22 / h**3,
        "q1": 1.5 * s.Q1 / h, "q2": 1.5 * s.Q2 / h,
        "q1s": 1.5 * s.Q1_s / h, "q2s": 1.5 * s.Q2_s / h,
        "r11": 1.5 * s.R11 / h, "r12": 1.5 * s.R12 / h,
        "r21": 1.5 * s.R21 / h, "r22": 1.5 * s.R22 / h,
        "s1s": 6.0 * s.S1_s / h**2, "s2s": 6.0 * s.S2_s / h**2,
        "m1s": s.M1_s / h, "m2s": s.M2_s / h,
    }

    lin = 0.5 * h * z
    par = 1.0 - z**2
    cub = -0.75 * (z**3 / 3.0 - z)

    zero = 0.0 * (np.asarray(s.M11, dtype=float) + np.asarray(loads.p, dtype=float))
    sig = np.empty(np.shape(zero) + (3, 3))
    muc = np.empty_like(sig)

    sig[..., 0, 0] = n["n11"] + lin * n["m11"]
    sig[..., 0, 1] = n["n12"] + lin * n["m12"]
    sig[..., 1, 0] = n["n21"] + lin * n["m21"]
    sig[..., 1, 1] = n["n22"] + lin * n["m22"]
    sig[..., 2, 0] = par * n["q1"]
    sig[..., 2, 1] = par * n["q2"]
    sig[..., 0, 2] = par * n["q1s"]
    sig[..., 1, 2] = par * n["q2s"]
    sig[..., 2, 2] = cub * np.asarray(loads.p) + np.asarray(loads.sigma0)

    muc[..., 0, 0] = par * n["r11"]
    muc[..., 0, 1] = par * n["r12"]
    muc[..., 1, 0] = par * n["r21"]
    muc[..., 1, 1] = par * n["r22"]
    muc[..., 0, 2] = z * n["s1s"] + n["m1s"]
    muc[..., 1, 2] = z * n["s2s"] + n["m2s"]
    muc[..., 2, 0] = 0.0
    muc[..., 2, 1] = 0.0
    muc[..., 2, 2] = z * np.asarray(loads.v) + np.asarray(loads.t)

    return ThicknessProfiles(sigma=sig, mu_c=muc)


def resultants_from_profiles(evaluator, h: float) -> PlateStress:
    """Apply the weighted thickness integrals that define the resultants.

    ``evaluator(zeta3)`` returns a :class:`ThicknessProfiles`; the
    integrals use Gauss-Legendre quadrature exact for the assumed
    polynomial degrees.
    """
    half = 0.5 * h
    acc = None
    for zk, wk in zip(_GL_NODES, _GL_WEIGHTS):
        prof = evaluator(zk)
        sig, muc = np.asarray(prof.sigma), np.asarray(prof.mu_c)
        terms = np.stack([
            half**2 * zk * sig[..., 0, 0], half**2 * zk * sig[..., 0, 1],
            half**2 * zk * sig[..., 1, 0], half**2 * zk * sig[..., 1, 1],
            half * sig[..., 2, 0], half * sig[..., 2, 1],
            half * sig[..., 0, 2], half * sig[..., 1, 2],
            half * muc[..., 0, 0], half * muc[..., 0, 1],
            half * muc[..., 1, 0], half * muc[..., 1, 1],
            half**2 * zk * muc[..., 0, 2], half**2 * zk * muc[..., 1, 2],
            half * sig[..., 0, 0], half * sig[..., 0, 1],
            half * sig[..., 1, 0], half * sig[..., 1, 1],
            half * muc[..., 0, 2], half * muc[..., 1, 2],
        ])
        acc = wk * terms if acc is None else acc + wk * terms
    return PlateStress.from_array(acc)
