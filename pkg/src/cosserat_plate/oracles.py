"""Independent oracles used by the verification suites.

Everything here is deliberately implemented from first principles or from
classical literature formulas, not by calling the code paths under test:
a matrix-assembled 3D constitutive map, thickness-quadrature evaluations
of the plate work and kinetic densities, a self-contained Reissner-Mindlin
finite-difference solver and its closed-form dispersion relation, and the
polynomial manufactured-solution machinery.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .material import MaterialParams
from .plate_fields import (
    KINEMATIC_FIELDS,
    PlateKinematics,
    PlateStress,
    LoadSet,
)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)

_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_i, _k, _j] = -1.0


# ---------------------------------------------------------------------------
# 3D constitutive map as an explicitly assembled 9x9 matrix
# ---------------------------------------------------------------------------

def constitutive_matrices(p: MaterialParams):
    """(A_sigma, A_mu): 9x9 matrices acting on row-major flattened tensors.

    Assembled index-by-index from the Kronecker-delta structure of the
    isotropic law, independent of the tensor-expression implementation.
    """
    def assemble(c_sym, c_skw, c_tr):
        A = np.zeros((9, 9))
        for j in range(3):
            for i in range(3):
                for l in range(3):
                    for k in range(3):
                        val = 0.0
                        if j == l and i == k:
                            val += c_sym
                        if j == k and i == l:
                            val += c_skw
                        if j == i and l == k:
                            val += c_tr
                        A[3 * j + i, 3 * l + k] = val
        return A

    A_sigma = assemble(p.mu + p.alpha, p.mu - p.alpha, p.lam)
    A_mu = assemble(p.gamma + p.epsilon, p.gamma - p.epsilon, p.beta)
    return A_sigma, A_mu


# ---------------------------------------------------------------------------
# thickness reconstruction of the kinematic fields
# ---------------------------------------------------------------------------

def kinematic_profiles(u: PlateKinematics, h: float, zeta: float):
    """(u1, u2, u3, phi1, phi2, phi3) at scaled thickness coordinate zeta.

    The mid-plane averages invert to the raw amplitudes through the
    correspondence coefficients 4/5, 8/5 and 1.
    """
    th1 = 1.25 * np.asarray(u.omega1_0)
    th2 = 1.25 * np.asarray(u.omega2_0)
    th3 = (5.0 * h / 8.0) * np.asarray(u.omega3)
    return (
        np.asarray(u.u1) + 0.5 * h * zeta * np.asarray(u.psi1),
        np.asarray(u.u2) + 0.5 * h * zeta * np.asarray(u.psi2),
        np.asarray(u.w) + 0.0 * zeta,
        th1 * (1.0 - zeta**2),
        th2 * (1.0 - zeta**2),
        np.asarray(u.omega3_0) + zeta * (1.0 - zeta**2 / 3.0) * th3,
    )


def strain_profiles(u: PlateKinematics, d1: PlateKinematics,
                    d2: PlateKinematics, h: float, zeta: float):
    """3D strain and torsion tensors gamma_ji = u_i,j + eps_jik phi_k,
    chi_ji = phi_i,j at a thickness point, from the plate kinematics."""
    prof = kinematic_profiles(u, h, zeta)
    p1 = kinematic_profiles(d1, h, zeta)
    p2 = kinematic_profiles(d2, h, zeta)
    # d/dx3 = (2/h) d/dzeta of the reconstruction
    th1 = 1.25 * np.asarray(u.omega1_0)
    th2 = 1.25 * np.asarray(u.omega2_0)
    th3 = (5.0 * h / 8.0) * np.asarray(u.omega3)
    du_dz = (
        np.asarray(u.psi1) + 0.0 * zeta,
        np.asarray(u.psi2) + 0.0 * zeta,
        0.0 * np.asarray(u.w),
        (2.0 / h) * th1 * (-2.0 * zeta),
        (2.0 / h) * th2 * (-2.0 * zeta),
        (2.0 / h) * th3 * (1.0 - zeta**2),
    )
    disp = np.stack(prof[:3])
    phi = np.stack(prof[3:])
    grads = np.stack([np.stack(p1[:3]), np.stack(p2[:3]), np.stack(du_dz[:3])])
    phgrads = np.stack([np.stack(p1[3:]), np.stack(p2[3:]), np.stack(du_dz[3:])])

    base = np.broadcast(np.asarray(u.w)).shape
    gamma = np.zeros((3, 3) + base)
    chi = np.zeros((3, 3) + base)
    for j in range(3):
        for i in range(3):
            gamma[j, i] = grads[j, i]
            for k in range(3):
                if _EPS[j, i, k] != 0.0:
                    gamma[j, i] = gamma[j, i] + _EPS[j, i, k] * phi[k]
            chi[j, i] = phgrads[j, i]
    return gamma, chi


def work_density_quadrature(s: PlateStress, loads: LoadSet,
                            u: PlateKinematics, d1: PlateKinematics,
                            d2: PlateKinematics, h: float):
    """(h/2) Int(sigma:gamma + mu:chi) dzeta with profile-consistent fields.

    For an independent resultant set s this equals S . E(u) plus the face
    couple-mean correction (5h/6) * t * Omega3 (the mu_33 chi_33 pairing,
    which has no resultant slot).
    """
    from .plate_constitutive import thickness_profiles

    total = 0.0
    for zk, wk in zip(_GL_NODES, _GL_WEIGHTS):
        prof = thickness_profiles(s, loads, h, zk)
        gamma, chi = strain_profiles(u, d1, d2, h, zk)
        sg = np.einsum("...ji,ji...->...", prof.sigma, gamma)
        mc = np.einsum("...ji,ji...->...", prof.mu_c, chi)
        total = total + wk * (sg + mc)
    return 0.5 * h * total


def kinetic_density_quadrature(vel: PlateKinematics, p: MaterialParams,
                               h: float):
    """(h/2) Int 0.5 (rho udot.udot + J phidot.phidot) dzeta.

    Brute-force thickness integration of the kinetic energy under the
    kinematic profiles; matches the plate inertia set on every field
    except Omega3, whose profile-consistent weight is (85/1008) J3 h^3
    against the tabulated (25/32) J3 h^3 (ratio 315/34).
    """
    total = 0.0
    for zk, wk in zip(_GL_NODES, _GL_WEIGHTS):
        u1, u2, u3, f1, f2, f3 = kinematic_profiles(vel, h, zk)
        dens = 0.5 * (
            p.rho * (u1**2 + u2**2 + u3**2)
            + p.J[0] * f1**2 + p.J[1] * f2**2 + p.J[2] * f3**2
        )
        total = total + wk * dens
    return 0.5 * h * total


OMEGA3_INERTIA_QUADRATURE = 85.0 / 1008.0   # vs tabulated 25/32


# ---------------------------------------------------------------------------
# classical Reissner-Mindlin plate oracles
# ---------------------------------------------------------------------------

def mindlin_assemble(D: float, nu: float, S: float, a: float, b: float,
                     nx: int, ny: int):
    """Collocated FD matrix of the classical Mindlin plate, clamped edges.

    Fields (psi1, psi2, w); S = kappa G h.  Written directly from the
    textbook equations as an independent check on the micropolar pipeline.
    """
    dx = a / (nx - 1)
    dy = b / (ny - 1)
    nn = nx * ny
    ndof = 3 * nn

    def node(i, j):
        return i * ny + j

    rows, cols, vals = [], [], []

    def add(r, c, w):
        rows.append(r)
        cols.append(c)
        vals.append(w)

    def lap_terms(cxx, cyy):
        return [((1, 0), cxx / dx**2), ((-1, 0), cxx / dx**2),
                ((0, 0), -2.0 * cxx / dx**2 - 2.0 * cyy / dy**2),
                ((0, 1), cyy / dy**2), ((0, -1), cyy / dy**2)]

    cross = [((1, 1), 1.0), ((-1, -1), 1.0), ((1, -1), -1.0), ((-1, 1), -1.0)]
    for i in range(nx):
        for j in range(ny):
            nij = node(i, j)
            boundary = i in (0, nx - 1) or j in (0, ny - 1)
            if boundary:
                for f in range(3):
                    add(f * nn + nij, f * nn + nij, 1.0)
                continue
            # psi1 row
            r = 0 * nn + nij
            for (di, dj), w in lap_terms(D, D * (1 - nu) / 2):
                add(r, 0 * nn + node(i + di, j + dj), w)
            for (di, dj), w in cross:
                add(r, 1 * nn + node(i + di, j + dj),
                    w * D * (1 + nu) / 2 / (4 * dx * dy))
            add(r, 0 * nn + nij, -S)
            add(r, 2 * nn + node(i + 1, j), -S / (2 * dx))
            add(r, 2 * nn + node(i - 1, j), S / (2 * dx))
            # psi2 row
            r = 1 * nn + nij
            for (di, dj), w in lap_terms(D * (1 - nu) / 2, D):
                add(r, 1 * nn + node(i + di, j + dj), w)
            for (di, dj), w in cross:
                add(r, 0 * nn + node(i + di, j + dj),
                    w * D * (1 + nu) / 2 / (4 * dx * dy))
            add(r, 1 * nn + nij, -S)
            add(r, 2 * nn + node(i, j + 1), -S / (2 * dy))
            add(r, 2 * nn + node(i, j - 1), S / (2 * dy))
            # w row
            r = 2 * nn + nij
            for (di, dj), w in lap_terms(S, S):
                add(r, 2 * nn + node(i + di, j + dj), w)
            add(r, 0 * nn + node(i + 1, j), S / (2 * dx))
            add(r, 0 * nn + node(i - 1, j), -S / (2 * dx))
            add(r, 1 * nn + node(i, j + 1), S / (2 * dy))
            add(r, 1 * nn + node(i, j - 1), -S / (2 * dy))
    A = sp.coo_matrix((vals, (rows, cols)), shape=(ndof, ndof)).tocsr()
    return A, nn


def mindlin_static_center_deflection(D, nu, S, p, a, b, nx, ny):
    """Clamped square under uniform load p; returns the center deflection."""
    A, nn = mindlin_assemble(D, nu, S, a, b, nx, ny)
    rhs = np.zeros(3 * nn)
    for i in range(1, nx - 1):
        for j in range(1, ny - 1):
            rhs[2 * nn + i * ny + j] = -p
    sol = spla.spsolve(A.tocsc(), rhs)
    w = sol[2 * nn:].reshape(nx, ny)
    return w[(nx - 1) // 2, (ny - 1) // 2], w


def mindlin_dispersion(D, nu, S, I, rho_h, k):
    """Closed-form Mindlin branch frequencies at wavenumber k.

    Returns the three sorted frequencies: the flexural/thickness-shear pair
    from det[(D k^2 + S - I w^2)(S k^2 - rho_h w^2) - S^2 k^2] = 0 and the
    twisting branch w^2 = (D(1-nu)/2 k^2 + S)/I.
    """
    aq = I * rho_h
    bq = -(rho_h * (D * k**2 + S) + I * S * k**2)
    cq = D * S * k**4
    disc = bq**2 - 4.0 * aq * cq
    sq = np.sqrt(max(disc, 0.0))
    w2a = (-bq - sq) / (2.0 * aq)
    w2b = (-bq + sq) / (2.0 * aq)
    w2c = (0.5 * D * (1.0 - nu) * k**2 + S) / I
    return np.sort(np.sqrt(np.maximum([w2a, w2b, w2c], 0.0)))


def mindlin_verlet_trajectory(D, nu, S, I, rho_h, a, b, nx, ny, v0_w,
                              dt, n_steps):
    """Free vibration of the classical plate with the same explicit scheme.

    Initial condition: zero fields, w-velocity profile v0_w.  Returns the
    (psi1, psi2, w) trajectory sampled every step, for trajectory-level
    comparison with the micropolar solver at N ~ 0.
    """
    A, nn = mindlin_assemble(D, nu, S, a, b, nx, ny)
    interior = []
    for i in range(1, nx - 1):
        for j in range(1, ny - 1):
            interior.append(i * ny + j)
    interior = np.asarray(interior)
    idofs = np.concatenate([f * nn + interior for f in range(3)])
    mass = np.concatenate([
        np.full(interior.size, I), np.full(interior.size, I),
        np.full(interior.size, rho_h),
    ])
    A_int = A[idofs]

    h = np.zeros(3 * nn)
    v = np.zeros(3 * nn)
    v[2 * nn + interior] = v0_w.reshape(nx, ny)[1:-1, 1:-1].ravel()

    def accel(hv):
        return (A_int @ hv) / mass

    out = [h.copy()]
    a0 = accel(h)
    for _ in range(n_steps):
        vi = v[idofs] + 0.5 * dt * a0
        h[idofs] += dt * vi
        a0 = accel(h)
        v[idofs] = vi + 0.5 * dt * a0
        out.append(h.copy())
    return np.asarray(out), nn


# ---------------------------------------------------------------------------
# manufactured polynomial solutions
# ---------------------------------------------------------------------------

def manufactured_fields(rng, degree: int = 3):
    """Random polynomial kinematics of total degree <= degree (9 fields)."""
    from .poly2d import Poly2D

    return {n: Poly2D.random(rng, degree) for n in KINEMATIC_FIELDS}


def manufactured_static_problem(model, polys):
    """Interior forcing and clamped boundary data realizing the given
    polynomial kinematics as the exact solution of the static systems."""
    flex_names = ("psi1", "psi2", "w", "omega3", "omega1_0", "omega2_0")
    ext_names = ("u1", "u2", "omega3_0")
    flex_polys = [polys[n] for n in flex_names]
    ext_polys = [polys[n] for n in ext_names]
    F_flex = model.flex.apply_to_polynomials(flex_polys)
    F_ext = model.ext.apply_to_polynomials(ext_polys)
    X, Y = model.X, model.Y
    f_flex = np.stack([f(X, Y) for f in F_flex])
    f_ext = np.stack([f(X, Y) for f in F_ext])

    def flex_data(x, y):
        return np.stack([p(x, y) for p in flex_polys])

    def ext_data(x, y):
        return np.stack([p(x, y) for p in ext_polys])

    exact_flex = np.stack([p(X, Y) for p in flex_polys])
    exact_ext = np.stack([p(X, Y) for p in ext_polys])
    return f_flex, f_ext, flex_data, ext_data, exact_flex, exact_ext
