"""Plane-wave dispersion analysis of the homogeneous governing systems.

For a wave H = v exp(i(k . x - w t)) the system L(d/dx) H = M d^2H/dt^2
becomes the generalized Hermitian-definite eigenproblem

    A(k) v = w^2 M v,      A(k) = -L(i k),

with M the diagonal inertia.  For admissible materials A(k) is positive
semidefinite, so all branches are real; a significantly negative
eigenvalue signals a broken (non-conservative) operator table and raises.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

NEGATIVE_TOL = -1e-10


class NonConservativeSymbolError(RuntimeError):
    """The plane-wave matrix produced an eigenvalue below tolerance."""


@dataclass(frozen=True)
class DispersionResult:
    xi: np.ndarray                    # (n, 2) wavevectors
    flexural: np.ndarray              # (n, 6) sorted angular frequencies
    extensional: np.ndarray           # (n, 3)
    flexural_modes: np.ndarray | None = None    # (n, 6, 6)
    extensional_modes: np.ndarray | None = None  # (n, 3, 3)


def _branch_frequencies(op, k1: float, k2: float, with_modes: bool):
    A = op.wave_matrix(k1, k2)
    herm_err = np.max(np.abs(A - A.conj().T))
    scale = max(np.max(np.abs(A)), 1.0)
    if herm_err > 1e-12 * scale:
        raise NonConservativeSymbolError(
            f"wave matrix not Hermitian at k=({k1}, {k2}):"
            f" asymmetry {herm_err:.3e} (operator table inconsistent)"
        )
    M = np.diag(op.mass.astype(float))
    if with_modes:
        w2, vecs = scipy.linalg.eigh(A, M)
    else:
        w2 = scipy.linalg.eigh(A, M, eigvals_only=True)
        vecs = None
    floor = NEGATIVE_TOL * max(scale / np.min(op.mass), 1.0)
    if np.min(w2) < floor:
        raise NonConservativeSymbolError(
            f"negative squared frequency {np.min(w2):.3e} at k=({k1}, {k2})"
        )
    w = np.sqrt(np.clip(w2, 0.0, None))
    order = np.argsort(w)
    w = w[order]
    if vecs is not None:
        vecs = vecs[:, order]
        vecs = _fix_phase(vecs)
    return w, vecs


def _fix_phase(vecs: np.ndarray) -> np.ndarray:
    """Deterministic eigenvector phase: largest component real positive."""
    out = vecs.copy()
    for j in range(out.shape[1]):
        i = np.argmax(np.abs(out[:, j]))
        pivot = out[i, j]
        if pivot != 0.0:
            out[:, j] = out[:, j] * (np.conj(pivot) / abs(pivot))
    return out


def dispersion_curves(flex, ext, xi, with_modes: bool = False) -> DispersionResult:
    """Frequencies of both subsystems along a list of wavevectors.

    ``xi`` is an (n, 2) array of real wavevectors [1/m]; branches come out
    sorted ascending per sample.
    """
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    nf = np.zeros((xi.shape[0], 6))
    ne = np.zeros((xi.shape[0], 3))
    mf = np.zeros((xi.shape[0], 6, 6), dtype=complex) if with_modes else None
    me = np.zeros((xi.shape[0], 3, 3), dtype=complex) if with_modes else None
    for i, (k1, k2) in enumerate(xi):
        wf, vf = _branch_frequencies(flex, k1, k2, with_modes)
        we, ve = _branch_frequencies(ext, k1, k2, with_modes)
        nf[i], ne[i] = wf, we
        if with_modes:
            mf[i], me[i] = vf, ve
    return DispersionResult(
        xi=xi, flexural=nf, extensional=ne,
        flexural_modes=mf, extensional_modes=me,
    )


@dataclass(frozen=True)
class CutoffReport:
    """Frequencies at zero wavevector with the zero modes identified."""

    frequencies: np.ndarray
    zero_mode_count: int
    zero_mode_fields: tuple[str, ...]


_FLEX_NAMES = ("psi1", "psi2", "w", "omega3", "omega1_0", "omega2_0")
_EXT_NAMES = ("u1", "u2", "omega3_0")


def cutoff_frequencies(op, rel_tol: float = 1e-9) -> CutoffReport:
    """Eigenvalues of the zero-wavevector symbol, with zero-mode bookkeeping.

    A branch counts as a zero mode when its squared frequency is negligible
    against the largest restoring term of A(0) (or when A(0) vanishes
    entirely).  Each zero mode is labelled by the dominant field of its
    eigenvector.
    """
    A = op.wave_matrix(0.0, 0.0).real
    M = np.diag(op.mass.astype(float))
    w2, vecs = scipy.linalg.eigh(A, M)
    scale = np.max(np.abs(A)) / np.min(op.mass)
    tol = rel_tol * max(scale, 1e-300)
    names = _FLEX_NAMES if A.shape[0] == 6 else _EXT_NAMES
    zero_fields = []
    for j in range(len(w2)):
        if w2[j] <= tol:
            zero_fields.append(names[int(np.argmax(np.abs(vecs[:, j])))])
    w = np.sqrt(np.clip(w2, 0.0, None))
    return CutoffReport(
        frequencies=np.sort(w),
        zero_mode_count=len(zero_fields),
        zero_mode_fields=tuple(zero_fields),
    )


def default_wavevectors(directions=None, k_min: float = 1e-2,
                        k_max: float = 1e2, n: int = 60) -> np.ndarray:
    """Sample wavevectors along unit directions, log+linear spacing."""
    if directions is None:
        directions = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
    mags = np.unique(np.concatenate([
        np.geomspace(k_min, k_max, n // 2),
        np.linspace(k_min, k_max, n - n // 2),
    ]))
    out = []
    for d in directions:
        d = np.asarray(d, dtype=float)
        d = d / np.linalg.norm(d)
        out.append(mags[:, None] * d[None, :])
    return np.vstack(out)
