"""Finite-difference discretization, static solves and explicit dynamics.

The mid-plane rectangle [0, a] x [0, b] carries a uniform nx x ny node
grid.  Interior nodes collocate the governing systems with second-order
central differences; boundary nodes carry either resultant displacement
rows (identity, data re-imposed exactly every step) or resultant traction
rows T(d/dx) H = F* discretized with one-sided second-order stencils in
the normal direction.  The formulation is ghost-free.

Time integration is the explicit central-difference (leapfrog) scheme in
its single-state velocity form: with M hdd = L h - f,

    v+ = v + dt/2 * a(h);  h' = h + dt * v+;  v' = v+ + dt/2 * a(h'),

which is algebraically the classic two-level central-difference update and
shares its conserved shadow energy.  Traction boundary values are
quasi-static: after each position update the boundary block is solved from
the traction rows (one sparse factorization, reused), and boundary
velocities from the time-differentiated constraint.

Energy bookkeeping uses the discrete quadratic forms of the scheme itself:
kinetic = 0.5 v^T M v and strain = -0.5 h^T L h (cell-area weighted), the
consistent quadrature of the plate stress energy integral.  With clamped
homogeneous edges the semi-discrete energy is exactly conserved, so the
measured drift isolates the time-integration error and scales as dt^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .material import MaterialParams, TechnicalConstants, technical_constants
from .operators import (
    ExtensionalOperator,
    FlexuralOperator,
    TractionOperator,
    build_extensional,
    build_flexural,
    build_traction,
)
from .plate_fields import (
    InertiaSet,
    LoadSet,
    PlateKinematics,
    inertia_constants,
)


class ConfigError(ValueError):
    """Invalid discretization or boundary configuration."""


class SingularSystemError(RuntimeError):
    """Static system is singular (names the rigid null space)."""


class InstabilityError(RuntimeError):
    """Unbounded energy growth detected during a run."""


EDGES = ("left", "right", "bottom", "top")
_NORMALS = {
    "left": (-1.0, 0.0),
    "right": (1.0, 0.0),
    "bottom": (0.0, -1.0),
    "top": (0.0, 1.0),
}


# ---------------------------------------------------------------------------
# loads
# ---------------------------------------------------------------------------

class ConstantLoad:
    def __init__(self, amplitude: float):
        self.amplitude = float(amplitude)

    def value(self, x, y, t):
        return self.amplitude * np.ones_like(np.asarray(x, dtype=float))

    def rate(self, x, y, t):
        return np.zeros_like(np.asarray(x, dtype=float))


class GaussianPulseLoad:
    """Spatial Gaussian bump with a Gaussian time envelope."""

    def __init__(self, amplitude, center=(0.5, 0.5), width=0.1,
                 t0=0.0, tau=None):
        self.amplitude = float(amplitude)
        self.center = (float(center[0]), float(center[1]))
        self.width = float(width)
        self.t0 = float(t0)
        self.tau = None if tau is None else float(tau)

    def _space(self, x, y):
        r2 = (np.asarray(x) - self.center[0]) ** 2 + (np.asarray(y) - self.center[1]) ** 2
        return self.amplitude * np.exp(-0.5 * r2 / self.width**2)

    def _time(self, t):
        if self.tau is None:
            return 1.0
        return math.exp(-0.5 * ((t - self.t0) / self.tau) ** 2)

    def value(self, x, y, t):
        return self._space(x, y) * self._time(t)

    def rate(self, x, y, t):
        if self.tau is None:
            return np.zeros_like(np.asarray(x, dtype=float))
        return self._space(x, y) * self._time(t) * (-(t - self.t0) / self.tau**2)


class SinusoidalLoad:
    def __init__(self, amplitude, kx=1, ky=1, omega=0.0, lx=1.0, ly=1.0):
        self.amplitude = float(amplitude)
        self.kx, self.ky = int(kx), int(ky)
        self.omega = float(omega)
        self.lx, self.ly = float(lx), float(ly)

    def _space(self, x, y):
        return self.amplitude * np.sin(self.kx * np.pi * np.asarray(x) / self.lx) * np.sin(
            self.ky * np.pi * np.asarray(y) / self.ly
        )

    def value(self, x, y, t):
        return self._space(x, y) * math.cos(self.omega * t)

    def rate(self, x, y, t):
        return -self.omega * self._space(x, y) * math.sin(self.omega * t)


@dataclass(frozen=True)
class LoadFunctions:
    """The four face loads as time-dependent fields (None = zero)."""

    p: object | None = None
    sigma0: object | None = None
    v: object | None = None
    t: object | None = None

    @property
    def is_empty(self) -> bool:
        return self.p is None and self.sigma0 is None and self.v is None \
            and self.t is None

    def sample(self, X, Y, time: float) -> LoadSet:
        def ev(f):
            return f.value(X, Y, time) if f is not None else np.zeros_like(X)

        return LoadSet(p=ev(self.p), sigma0=ev(self.sigma0),
                       v=ev(self.v), t=ev(self.t))

    def sample_rate(self, X, Y, time: float) -> LoadSet:
        def ev(f):
            return f.rate(X, Y, time) if f is not None else np.zeros_like(X)

        return LoadSet(p=ev(self.p), sigma0=ev(self.sigma0),
                       v=ev(self.v), t=ev(self.t))


# ---------------------------------------------------------------------------
# boundary conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeBC:
    """One edge of the plate: kinematic data on Gamma_u or resultant
    traction data on Gamma_sigma.

    ``flex_data(x, y) -> (6,...)`` / ``ext_data(x, y) -> (3,...)`` give the
    prescribed field values (clamped) or the prescribed boundary resultants
    (traction); None means homogeneous.
    """

    kind: str
    flex_data: object | None = None
    ext_data: object | None = None

    def __post_init__(self):
        if self.kind not in ("clamped", "traction"):
            raise ConfigError(f"unknown edge kind {self.kind!r}")


def _normalize_bc(bc) -> dict[str, EdgeBC]:
    if set(bc.keys()) != set(EDGES):
        raise ConfigError(
            f"bc must tag every edge exactly once; expected keys {EDGES}, "
            f"got {sorted(bc.keys())}"
        )
    out = {}
    for name, spec_ in bc.items():
        if isinstance(spec_, EdgeBC):
            out[name] = spec_
        elif spec_ in ("clamped", "traction"):
            out[name] = EdgeBC(kind=spec_)
        else:
            raise ConfigError(f"edge {name!r}: unknown bc {spec_!r}")
    return out


# ---------------------------------------------------------------------------
# model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelConfig:
    material: MaterialParams
    h: float
    a: float
    b: float
    nx: int
    ny: int
    bc: dict
    loads: LoadFunctions = field(default_factory=LoadFunctions)
    shear_correction: str = "standard"
    paper_literal: bool = False


@dataclass(frozen=True)
class DiscreteModel:
    config: ModelConfig
    tc: TechnicalConstants
    inertia: InertiaSet
    flex: FlexuralOperator
    ext: ExtensionalOperator
    traction: TractionOperator
    X: np.ndarray                  # (nx, ny) node coordinates
    Y: np.ndarray
    dx: float
    dy: float
    bc: dict
    flex_d: "_Discretization"
    ext_d: "_Discretization"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def nx(self) -> int:
        return self.config.nx

    @property
    def ny(self) -> int:
        return self.config.ny

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @property
    def interior_unknown_count(self) -> int:
        """Unknowns carried by interior balance rows (9 fields per node)."""
        return (self.nx - 2) * (self.ny - 2) * 9

    def sample_loads(self, t: float) -> LoadSet:
        return self.config.loads.sample(self.X, self.Y, t)

    def grid_gradient(self, f: np.ndarray):
        gx, gy = np.gradient(f, self.dx, self.dy, edge_order=2)
        return gx, gy


def assemble(config: ModelConfig) -> DiscreteModel:
    """Validate the configuration and build the discrete model."""
    from .material import validate_parameters

    report = validate_parameters(config.material)
    if not report.admissible:
        raise ConfigError(
            "inadmissible material: " + ", ".join(report.violations)
        )
    if config.nx < 5 or config.ny < 5:
        raise ConfigError(f"nx,ny >= 5 required, got {config.nx}x{config.ny}")
    for name, val in (("a", config.a), ("b", config.b), ("h", config.h)):
        if not val > 0.0:
            raise ConfigError(f"geometry {name} must be positive, got {val}")
    bc = _normalize_bc(config.bc)

    tc = technical_constants(config.material, config.h, config.shear_correction)
    inertia = inertia_constants(config.material, config.h)
    flex = build_flexural(tc, inertia, paper_literal=config.paper_literal)
    ext = build_extensional(tc, inertia, paper_literal=config.paper_literal)
    trac = build_traction(tc)

    x = np.linspace(0.0, config.a, config.nx)
    y = np.linspace(0.0, config.b, config.ny)
    X, Y = np.meshgrid(x, y, indexing="ij")
    dx = x[1] - x[0]
    dy = y[1] - y[0]

    flex_d = _Discretization(config, bc, flex, trac.flex, X, Y, dx, dy, "flexural")
    ext_d = _Discretization(config, bc, ext, trac.ext, X, Y, dx, dy, "extensional")

    return DiscreteModel(
        config=config, tc=tc, inertia=inertia, flex=flex, ext=ext,
        traction=trac, X=X, Y=Y, dx=dx, dy=dy, bc=bc,
        flex_d=flex_d, ext_d=ext_d,
    )


# ---------------------------------------------------------------------------
# per-subsystem discretization
# ---------------------------------------------------------------------------

def _d1_stencil(i: int, n: int, d: float):
    """Second-order first-derivative stencil offsets/weights along one axis."""
    if i == 0:
        return ((0, -1.5 / d), (1, 2.0 / d), (2, -0.5 / d))
    if i == n - 1:
        return ((0, 1.5 / d), (-1, -2.0 / d), (-2, 0.5 / d))
    return ((-1, -0.5 / d), (1, 0.5 / d))


class _Discretization:
    """Sparse rows of one subsystem plus the index bookkeeping."""

    def __init__(self, config, bc, op, tn, X, Y, dx, dy, name):
        self.name = name
        self.op = op
        self.tn = tn
        self.nf = op.active_coeffs.shape[0]
        self.nx, self.ny = config.nx, config.ny
        self.dx, self.dy = dx, dy
        self.X, self.Y = X, Y
        self.bc = bc
        self.ndof = self.nf * self.nx * self.ny

        self._classify_nodes()
        self._assemble_matrix()
        self._factorize_traction()
        self.mass_interior = np.repeat(
            op.mass, self.interior_nodes.size
        ).astype(float)
        self.has_dirichlet = self.dirich_nodes.size > 0

    # -- node bookkeeping --------------------------------------------------

    def _node_index(self, i, j):
        return i * self.ny + j

    def _gdof(self, f, node):
        return f * (self.nx * self.ny) + node

    def _classify_nodes(self):
        nx, ny = self.nx, self.ny
        kind = np.zeros((nx, ny), dtype=int)  # 0 interior, 1 dirichlet, 2 traction
        normal_raw = np.zeros((nx, ny, 2))    # accumulated edge normals
        edge_nodes = {
            "left": [(0, j) for j in range(ny)],
            "right": [(nx - 1, j) for j in range(ny)],
            "bottom": [(i, 0) for i in range(nx)],
            "top": [(i, ny - 1) for i in range(nx)],
        }
        for name in EDGES:
            tag = 1 if self.bc[name].kind == "clamped" else 2
            n = _NORMALS[name]
            for (i, j) in edge_nodes[name]:
                if kind[i, j] == 1:
                    continue  # displacement data wins at corners
                if kind[i, j] == 2 and tag == 2:
                    # traction-traction corner: superpose the edge rows,
                    # which averages the normals and halves the data weight
                    normal_raw[i, j] += np.asarray(n)
                    continue
                kind[i, j] = tag
                normal_raw[i, j] = n
        norm = np.linalg.norm(normal_raw, axis=2)
        norm[norm == 0.0] = 1.0
        self.kind = kind
        self.normal = normal_raw / norm[:, :, None]
        # per-node weight applied to each contributing edge's prescribed
        # data so the combined row stays consistent with the averaged normal
        self.trac_weight = 1.0 / norm
        ii, jj = np.nonzero(kind == 0)
        self.interior_nodes = self._node_index(ii, jj)
        self._int_ij = (ii, jj)
        ii, jj = np.nonzero(kind == 1)
        self.dirich_nodes = self._node_index(ii, jj)
        self._dir_ij = (ii, jj)
        ii, jj = np.nonzero(kind == 2)
        self.trac_nodes = self._node_index(ii, jj)
        self._trac_ij = (ii, jj)

        nn = self.nx * self.ny
        self.interior_dofs = (
            np.arange(self.nf)[:, None] * nn + self.interior_nodes[None, :]
        ).ravel()
        self.dirich_dofs = (
            np.arange(self.nf)[:, None] * nn + self.dirich_nodes[None, :]
        ).ravel()
        self.trac_dofs = (
            np.arange(self.nf)[:, None] * nn + self.trac_nodes[None, :]
        ).ravel()

    # -- matrix assembly ----------------------------------------------------

    def _assemble_matrix(self):
        nx, ny, nf = self.nx, self.ny, self.nf
        dx, dy = self.dx, self.dy
        rows, cols, vals = [], [], []

        ii, jj = self._int_ij
        node = self.interior_nodes
        C = self.op.active_coeffs

        def add(r, c, di, dj, w):
            rows.append(self._gdof(r, node))
            cols.append(self._gdof(c, self._node_index(ii + di, jj + dj)))
            vals.append(np.full(node.size, w))

        for r in range(nf):
            for c in range(nf):
                c0, c1, c2, c3, c4, c5 = C[r, c]
                if c0 != 0.0:
                    add(r, c, 0, 0, c0)
                if c1 != 0.0:
                    add(r, c, 1, 0, 0.5 * c1 / dx)
                    add(r, c, -1, 0, -0.5 * c1 / dx)
                if c2 != 0.0:
                    add(r, c, 0, 1, 0.5 * c2 / dy)
                    add(r, c, 0, -1, -0.5 * c2 / dy)
                if c3 != 0.0:
                    add(r, c, 1, 0, c3 / dx**2)
                    add(r, c, 0, 0, -2.0 * c3 / dx**2)
                    add(r, c, -1, 0, c3 / dx**2)
                if c4 != 0.0:
                    w = 0.25 * c4 / (dx * dy)
                    add(r, c, 1, 1, w)
                    add(r, c, -1, -1, w)
                    add(r, c, 1, -1, -w)
                    add(r, c, -1, 1, -w)
                if c5 != 0.0:
                    add(r, c, 0, 1, c5 / dy**2)
                    add(r, c, 0, 0, -2.0 * c5 / dy**2)
                    add(r, c, 0, -1, c5 / dy**2)

        # displacement rows: identity
        if self.dirich_nodes.size:
            for f in range(nf):
                rows.append(self._gdof(f, self.dirich_nodes))
                cols.append(self._gdof(f, self.dirich_nodes))
                vals.append(np.ones(self.dirich_nodes.size))

        # traction rows: n . T with one-sided normal stencils
        ti, tj = self._trac_ij
        for i, j in zip(ti, tj):
            nvec = self.normal[i, j]
            node_ij = self._node_index(i, j)
            coeffs = np.einsum("rcab,a->rcb", self.tn, nvec)
            sx = _d1_stencil(i, nx, dx)
            sy = _d1_stencil(j, ny, dy)
            for r in range(nf):
                for c in range(nf):
                    c0, c1, c2 = coeffs[r, c, 0], coeffs[r, c, 1], coeffs[r, c, 2]
                    if c0 != 0.0:
                        rows.append([self._gdof(r, node_ij)])
                        cols.append([self._gdof(c, node_ij)])
                        vals.append([c0])
                    if c1 != 0.0:
                        for di, w in sx:
                            rows.append([self._gdof(r, node_ij)])
                            cols.append([self._gdof(c, self._node_index(i + di, j))])
                            vals.append([c1 * w])
                    if c2 != 0.0:
                        for dj, w in sy:
                            rows.append([self._gdof(r, node_ij)])
                            cols.append([self._gdof(c, self._node_index(i, j + dj))])
                            vals.append([c2 * w])

        rows = np.concatenate([np.asarray(r, dtype=int) for r in rows])
        cols = np.concatenate([np.asarray(c, dtype=int) for c in cols])
        vals = np.concatenate([np.asarray(v, dtype=float) for v in vals])
        A = sp.coo_matrix((vals, (rows, cols)), shape=(self.ndof, self.ndof))
        self.A = A.tocsr()
        self.A_interior = self.A[self.interior_dofs]
        self.A_traction = self.A[self.trac_dofs]

    def _factorize_traction(self):
        if self.trac_dofs.size == 0:
            self.trac_lu = None
            self.A_trac_rest = None
            return
        T = self.A_traction.tocsc()
        T_bb = T[:, self.trac_dofs]
        rest = np.setdiff1d(np.arange(self.ndof), self.trac_dofs)
        self._rest_dofs = rest
        self.A_trac_rest = T[:, rest].tocsr()
        try:
            self.trac_lu = spla.splu(T_bb.tocsc())
        except RuntimeError as exc:
            raise SingularSystemError(
                f"{self.name} traction boundary block is singular: {exc}"
            ) from exc

    # -- load / data vectors -------------------------------------------------

    def _loads_on_grid(self, config_loads, t):
        loads = config_loads.sample(self.X, self.Y, t)
        g1p, g2p = np.gradient(np.asarray(loads.p, dtype=float), self.dx, self.dy, edge_order=2)
        g1t, g2t = np.gradient(np.asarray(loads.t, dtype=float), self.dx, self.dy, edge_order=2)
        g1s, g2s = np.gradient(np.asarray(loads.sigma0, dtype=float), self.dx, self.dy, edge_order=2)
        zero = np.zeros_like(g1p)
        grad1 = LoadSet(p=g1p, sigma0=g1s, v=zero, t=g1t)
        grad2 = LoadSet(p=g2p, sigma0=g2s, v=zero, t=g2t)
        return loads, grad1, grad2

    def load_rhs(self, config_loads, t):
        """Interior components of the load vector F, flattened per field."""
        if config_loads.is_empty:
            return np.zeros(self.interior_dofs.size)
        loads, grad1, grad2 = self._loads_on_grid(config_loads, t)
        F = self.op.load_vector(loads, grad1, grad2)
        out = np.zeros(self.ndof)
        flat = [np.asarray(f).ravel() for f in F]
        ii, jj = self._int_ij
        for f in range(self.nf):
            out[self._gdof(f, self.interior_nodes)] = flat[f][self.interior_nodes]
        return out[self.interior_dofs]

    def dirichlet_values(self, edge_data_key="flex_data"):
        """Prescribed field values on the displacement boundary dofs."""
        if self.dirich_nodes.size == 0:
            return np.zeros(0)
        ii, jj = self._dir_ij
        x, y = self.X[ii, jj], self.Y[ii, jj]
        data = np.zeros((self.nf, ii.size))
        for name in EDGES:
            ebc = self.bc[name]
            if ebc.kind != "clamped":
                continue
            fdata = getattr(ebc, edge_data_key)
            if fdata is None:
                continue
            mask = _edge_mask(name, ii, jj, self.nx, self.ny)
            if np.any(mask):
                vals_edge = np.asarray(fdata(x[mask], y[mask]))
                data[:, mask] = vals_edge
        return data.ravel()

    def traction_rhs(self, config_loads, t, edge_data_key="flex_data"):
        """F* on the traction dofs: prescribed minus load part."""
        if self.trac_dofs.size == 0:
            return np.zeros(0)
        ti, tj = self._trac_ij
        x, y = self.X[ti, tj], self.Y[ti, tj]
        out = np.zeros((self.nf, ti.size))
        if not config_loads.is_empty:
            loads = config_loads.sample(x, y, t)
            for kk in range(ti.size):
                nvec = self.normal[ti[kk], tj[kk]]
                ls = LoadSet(
                    p=np.asarray(loads.p).ravel()[kk],
                    sigma0=np.asarray(loads.sigma0).ravel()[kk],
                    v=np.asarray(loads.v).ravel()[kk],
                    t=np.asarray(loads.t).ravel()[kk],
                )
                if self.nf == 6:
                    lp = _flex_load_part(self.op.tc, ls, nvec)
                else:
                    lp = _ext_load_part(self.op.tc, ls, nvec)
                out[:, kk] = -np.asarray(lp)
        for name in EDGES:
            ebc = self.bc[name]
            if ebc.kind != "traction":
                continue
            fdata = getattr(ebc, edge_data_key)
            if fdata is None:
                continue
            mask = _edge_mask(name, ti, tj, self.nx, self.ny)
            if np.any(mask):
                w = self.trac_weight[ti[mask], tj[mask]]
                out[:, mask] += w * np.asarray(fdata(x[mask], y[mask]))
        return out.ravel()

    def traction_rhs_rate(self, config_loads, t, edge_data_key="flex_data"):
        """d(F*)/dt (prescribed data static; only loads move)."""
        if self.trac_dofs.size == 0:
            return np.zeros(0)
        if config_loads.is_empty:
            return np.zeros(self.trac_dofs.size)
        ti, tj = self._trac_ij
        x, y = self.X[ti, tj], self.Y[ti, tj]
        rate = config_loads.sample_rate(x, y, t)
        out = np.zeros((self.nf, ti.size))
        for kk in range(ti.size):
            nvec = self.normal[ti[kk], tj[kk]]
            ls = LoadSet(
                p=np.asarray(rate.p).ravel()[kk],
                sigma0=np.asarray(rate.sigma0).ravel()[kk],
                v=np.asarray(rate.v).ravel()[kk],
                t=np.asarray(rate.t).ravel()[kk],
            )
            if self.nf == 6:
                lp = _flex_load_part(self.op.tc, ls, nvec)
            else:
                lp = _ext_load_part(self.op.tc, ls, nvec)
            out[:, kk] = -np.asarray(lp)
        return out.ravel()

    # -- dynamics helpers ----------------------------------------------------

    def solve_boundary(self, h_full: np.ndarray, fstar: np.ndarray) -> np.ndarray:
        """Return h with the traction dofs replaced by the constraint solve."""
        if self.trac_lu is None:
            return h_full
        rhs = fstar - self.A_trac_rest @ h_full[self._rest_dofs]
        h_full = h_full.copy()
        h_full[self.trac_dofs] = self.trac_lu.solve(rhs)
        return h_full

    def acceleration(self, h_full: np.ndarray, f_int: np.ndarray) -> np.ndarray:
        """Interior accelerations M^-1 (L h - F)."""
        return (self.A_interior @ h_full - f_int) / self.mass_interior


def _edge_mask(name, ii, jj, nx, ny):
    if name == "left":
        return ii == 0
    if name == "right":
        return ii == nx - 1
    if name == "bottom":
        return jj == 0
    return jj == ny - 1


def _flex_load_part(tc, loads, n):
    c_p = tc.nu * tc.h**2 / (10.0 * (1.0 - tc.nu)) * loads.p
    c_t = 0.5 * tc.kappa2_sq * tc.h * (1.0 - tc.Psi) * loads.t
    return [n[0] * c_p, n[1] * c_p, 0.0, 0.0, n[0] * c_t, n[1] * c_t]


def _ext_load_part(tc, loads, n):
    c_s = tc.h * tc.nu / (1.0 - tc.nu) * loads.sigma0
    return [n[0] * c_s, n[1] * c_s, 0.0]


# ---------------------------------------------------------------------------
# static solve
# ---------------------------------------------------------------------------

def _static_rhs(d: _Discretization, config, data_key, extra_F=None):
    rhs = np.zeros(d.ndof)
    rhs[d.interior_dofs] = d.load_rhs(config.loads, 0.0)
    if extra_F is not None:
        flat = np.asarray(extra_F, dtype=float).reshape(d.nf, -1)
        rhs[d.interior_dofs] += flat[:, d.interior_nodes].ravel()
    rhs[d.dirich_dofs] = d.dirichlet_values(data_key)
    rhs[d.trac_dofs] = d.traction_rhs(config.loads, 0.0, data_key)
    return rhs


_FLEX_NULL = (
    "uniform transverse translation W and the two rigid tilt/microrotation "
    "pairs (Psi_a = theta, W = -theta x_a, Omega_a'^0 = -theta)"
)
_EXT_NULL = "uniform in-plane translations U1, U2 (and Omega3_0 as N -> 0)"


def _solve_subsystem(d: _Discretization, config, data_key, null_desc,
                     extra_F=None):
    if not d.has_dirichlet:
        raise SingularSystemError(
            f"{d.name} system has traction data on every edge; the rigid "
            f"null space ({null_desc}) makes the static problem singular"
        )
    rhs = _static_rhs(d, config, data_key, extra_F)
    try:
        h = spla.spsolve(d.A.tocsc(), rhs)
    except RuntimeError as exc:
        raise SingularSystemError(f"{d.name} static solve failed: {exc}") from exc
    if not np.all(np.isfinite(h)):
        raise SingularSystemError(f"{d.name} static solve produced non-finite values")
    resid = np.max(np.abs(d.A @ h - rhs))
    scale = max(np.max(np.abs(rhs)), 1.0e-300)
    return h, resid, scale


def static_solve(model: DiscreteModel, extra_flex_F=None, extra_ext_F=None):
    """Solve both static systems; returns (PlateKinematics, diagnostics).

    Requires at least one displacement-constrained edge; otherwise the
    rigid modes are reported by name.  ``extra_*_F`` adds a manufactured
    interior forcing (per-field grids) to the load vector.
    """
    cfg = model.config
    hf, rf, sf = _solve_subsystem(model.flex_d, cfg, "flex_data", _FLEX_NULL,
                                  extra_flex_F)
    he, re_, se = _solve_subsystem(model.ext_d, cfg, "ext_data", _EXT_NULL,
                                   extra_ext_F)
    shape = (model.nx, model.ny)
    flex_fields = hf.reshape(6, *shape)
    ext_fields = he.reshape(3, *shape)
    diag = {
        "flexural_residual": rf,
        "flexural_rhs_scale": sf,
        "extensional_residual": re_,
        "extensional_rhs_scale": se,
    }
    kin = PlateKinematics.from_arrays(flexural=flex_fields, extensional=ext_fields)
    return kin, diag


# ---------------------------------------------------------------------------
# time integration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteState:
    """Grid state: 6 flexural + 3 extensional fields, their velocities, time."""

    flex: np.ndarray         # (6, nx, ny)
    ext: np.ndarray          # (3, nx, ny)
    flex_vel: np.ndarray
    ext_vel: np.ndarray
    time: float = 0.0
    stability_warning: bool = False

    @classmethod
    def zero(cls, model: DiscreteModel) -> "DiscreteState":
        shape = (model.nx, model.ny)
        return cls(
            flex=np.zeros((6, *shape)), ext=np.zeros((3, *shape)),
            flex_vel=np.zeros((6, *shape)), ext_vel=np.zeros((3, *shape)),
        )

    def kinematics(self) -> PlateKinematics:
        return PlateKinematics.from_arrays(flexural=self.flex, extensional=self.ext)

    def velocities(self) -> PlateKinematics:
        return PlateKinematics.from_arrays(flexural=self.flex_vel, extensional=self.ext_vel)


def stable_dt(model: DiscreteModel, iterations: int = 300, seed: int = 0) -> float:
    """0.9 times the central-difference stability bound 2/omega_max.

    omega_max^2 is estimated by power iteration on M^-1 K of the
    boundary-condition-reduced semi-discrete system (both subsystems).
    The result is cached on the model.
    """
    key = ("stable_dt", iterations, seed)
    if key not in model._cache:
        w2 = max(
            _power_iteration(model.flex_d, iterations, seed),
            _power_iteration(model.ext_d, iterations, seed + 1),
        )
        model._cache[key] = 0.9 * 2.0 / math.sqrt(max(w2, 1e-300))
    return model._cache[key]


def _power_iteration(d: _Discretization, iterations: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(d.interior_dofs.size)
    v /= np.linalg.norm(v)
    lam = 0.0
    zero_fstar = np.zeros(d.trac_dofs.size)
    for _ in range(iterations):
        h = np.zeros(d.ndof)
        h[d.interior_dofs] = v
        h = d.solve_boundary(h, zero_fstar)
        w = -d.acceleration(h, np.zeros_like(v))
        lam = float(v @ w)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
    return abs(lam)


def step(state: DiscreteState, model: DiscreteModel, dt: float) -> DiscreteState:
    """One explicit central-difference step of both subsystems.

    Displacement-boundary values are re-imposed exactly; traction rows are
    solved for the boundary block after each position update.  A dt above
    the stability bound only flags the returned state, it does not raise.
    """
    warn = state.stability_warning or dt > stable_dt(model) * (1.0 + 1e-12)

    t0 = state.time
    t1 = t0 + dt
    cfg = model.config

    out_fields, out_vels = [], []
    for d, fields, vels, key in (
        (model.flex_d, state.flex, state.flex_vel, "flex_data"),
        (model.ext_d, state.ext, state.ext_vel, "ext_data"),
    ):
        h = fields.reshape(d.nf, -1).ravel().copy()
        v = vels.reshape(d.nf, -1).ravel().copy()

        f0 = d.load_rhs(cfg.loads, t0)
        a0 = d.acceleration(h, f0)
        v_half = v[d.interior_dofs] + 0.5 * dt * a0

        h_new = h.copy()
        h_new[d.interior_dofs] += dt * v_half
        h_new[d.dirich_dofs] = d.dirichlet_values(key)
        h_new = d.solve_boundary(h_new, d.traction_rhs(cfg.loads, t1, key))

        f1 = d.load_rhs(cfg.loads, t1)
        a1 = d.acceleration(h_new, f1)
        v_new = np.zeros_like(v)
        v_new[d.interior_dofs] = v_half + 0.5 * dt * a1
        if d.trac_dofs.size:
            rate = d.traction_rhs_rate(cfg.loads, t1, key)
            v_new = d.solve_boundary(v_new, rate)

        out_fields.append(h_new.reshape(d.nf, model.nx, model.ny))
        out_vels.append(v_new.reshape(d.nf, model.nx, model.ny))

    return DiscreteState(
        flex=out_fields[0], ext=out_fields[1],
        flex_vel=out_vels[0], ext_vel=out_vels[1],
        time=t1, stability_warning=warn,
    )


@dataclass
class EnergyLog:
    """Per-sample energies: kinetic, strain (discrete operator form),
    accumulated external work and total."""

    t: list = field(default_factory=list)
    kinetic: list = field(default_factory=list)
    strain: list = field(default_factory=list)
    external_work: list = field(default_factory=list)
    total: list = field(default_factory=list)

    def append(self, t, ke, ue, w):
        self.t.append(t)
        self.kinetic.append(ke)
        self.strain.append(ue)
        self.external_work.append(w)
        self.total.append(ke + ue)

    def as_arrays(self) -> dict:
        return {k: np.asarray(getattr(self, k)) for k in
                ("t", "kinetic", "strain", "external_work", "total")}


def _energies(model: DiscreteModel, state: DiscreteState):
    dA = model.cell_area
    ke = 0.0
    ue = 0.0
    for d, fields, vels in (
        (model.flex_d, state.flex, state.flex_vel),
        (model.ext_d, state.ext, state.ext_vel),
    ):
        h = fields.reshape(-1)
        v = vels.reshape(-1)
        vi = v[d.interior_dofs]
        ke += 0.5 * float(vi @ (d.mass_interior * vi)) * dA
        ue += -0.5 * float(h[d.interior_dofs] @ (d.A_interior @ h)) * dA
        # boundary strain contribution is quasi-static and excluded; with
        # homogeneous clamped edges the interior form is exact
    return ke, ue


@dataclass
class Trajectory:
    times: list
    states: list
    energy: EnergyLog
    dt: float
    n_steps: int


def simulate(model: DiscreteModel, t_final: float, dt: float | None = None,
             snapshot_every: int = 0, initial: DiscreteState | None = None,
             abort_on_instability: bool = True) -> Trajectory:
    """Run the explicit integrator to t_final with energy tracking.

    Aborts with a diagnostic when the total energy grows beyond ten times
    the initial energy plus the accumulated external work.
    """
    if not t_final > 0.0:
        raise ConfigError(f"t_final must be positive, got {t_final}")
    bound = stable_dt(model)
    if dt is None:
        dt = bound
    n_steps = max(1, math.ceil(t_final / dt))
    dt = t_final / n_steps

    state = initial if initial is not None else DiscreteState.zero(model)

    energy = EnergyLog()
    ke, ue = _energies(model, state)
    w_ext = 0.0
    energy.append(state.time, ke, ue, w_ext)
    e0 = ke + ue
    states = [state]
    times = [state.time]
    dA = model.cell_area

    track_work = not model.config.loads.is_empty
    for k in range(n_steps):
        t_mid = state.time + 0.5 * dt
        new_state = step(state, model, dt)
        if track_work:
            # midpoint external power; the applied force is -F in the
            # convention L h - F = M hdd
            for d, old_v, new_v in (
                (model.flex_d, state.flex_vel, new_state.flex_vel),
                (model.ext_d, state.ext_vel, new_state.ext_vel),
            ):
                f_mid = d.load_rhs(model.config.loads, t_mid)
                v_mid = 0.5 * (
                    old_v.reshape(-1)[d.interior_dofs]
                    + new_v.reshape(-1)[d.interior_dofs]
                )
                w_ext -= dt * float(f_mid @ v_mid) * dA
        state = new_state

        record = snapshot_every and ((k + 1) % snapshot_every == 0)
        if record or k == n_steps - 1:
            ke, ue = _energies(model, state)
            energy.append(state.time, ke, ue, w_ext)
            if record:
                states.append(state)
                times.append(state.time)
            if abort_on_instability:
                budget = abs(e0) + abs(w_ext) + 1e-300
                if not np.isfinite(ke + ue) or (ke + ue) > 10.0 * budget + 10.0 * abs(e0):
                    raise InstabilityError(
                        f"energy grew to {ke + ue:.3e} at t={state.time:.3e} "
                        f"(initial {e0:.3e}, external work {w_ext:.3e}); "
                        f"dt={dt:.3e} vs stability bound {bound:.3e}"
                    )
    if states[-1] is not state:
        states.append(state)
        times.append(state.time)
    return Trajectory(times=times, states=states, energy=energy, dt=dt,
                      n_steps=n_steps)
