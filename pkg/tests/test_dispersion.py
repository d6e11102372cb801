import dataclasses
import math

import numpy as np
import pytest

from conftest import random_material
from cosserat_plate.dispersion import (
    NonConservativeSymbolError,
    cutoff_frequencies,
    default_wavevectors,
    dispersion_curves,
)
from cosserat_plate.material import material_from_technical, technical_constants
from cosserat_plate.oracles import mindlin_dispersion
from cosserat_plate.operators import build_extensional, build_flexural
from cosserat_plate.plate_fields import inertia_constants


def make_ops(p, h):
    tc = technical_constants(p, h)
    inertia = inertia_constants(p, h)
    return tc, inertia, build_flexural(tc, inertia), build_extensional(tc, inertia)


@pytest.fixture
def classical_ops():
    p = material_from_technical(E=1.0, nu=0.3, N=1e-8, l_t=0.01, l_b=0.01,
                                Psi=1.0, rho=1.0, J=(1, 1, 1))
    return make_ops(p, 0.1)


@pytest.fixture
def micro_ops(rng):
    return make_ops(random_material(rng), 0.2)


def test_w_zero_mode_at_zero_wavevector(micro_ops):
    _, _, flex, _ = micro_ops
    rep = cutoff_frequencies(flex)
    assert "w" in rep.zero_mode_fields
    assert rep.frequencies[0] == 0.0


def test_shear_cutoff_classical(classical_ops):
    tc, inertia, flex, _ = classical_ops
    rep = cutoff_frequencies(flex)
    expected = math.sqrt((5 * tc.G * tc.h / 6) / inertia.I_o)
    # two rotation branches carry the shear cutoff
    top = np.sort(rep.frequencies)[-2:]
    np.testing.assert_allclose(top, expected, rtol=1e-8)


def test_classical_branches_match_mindlin(classical_ops):
    import scipy.linalg

    tc, inertia, flex, _ = classical_ops
    S = tc.kappa1_sq * tc.G * tc.h
    for k in (0.5, 2.0, 10.0, 40.0):
        A = flex.wave_matrix(k, 0.0)
        M = np.diag(flex.mass)
        w2, vecs = scipy.linalg.eigh(A, M)
        support = np.sum(np.abs(vecs[:3, :]) ** 2, axis=0) / np.sum(
            np.abs(vecs) ** 2, axis=0
        )
        classical = np.sort(np.sqrt(np.clip(w2[support > 0.5], 0, None)))
        ref = mindlin_dispersion(tc.D, tc.nu, S, inertia.I_o, inertia.rho_o, k)
        assert classical.size == 3
        np.testing.assert_allclose(classical, ref, rtol=1e-8)


def test_evenness(micro_ops, rng):
    _, _, flex, ext = micro_ops
    for _ in range(5):
        xi = rng.standard_normal(2) * 5
        r1 = dispersion_curves(flex, ext, [xi])
        r2 = dispersion_curves(flex, ext, [-xi])
        np.testing.assert_allclose(r1.flexural, r2.flexural, rtol=1e-10)
        np.testing.assert_allclose(r1.extensional, r2.extensional, rtol=1e-10)


def test_branch_continuity(micro_ops):
    _, _, flex, ext = micro_ops
    mags = np.linspace(0.1, 20.0, 200)
    xi = np.stack([mags, 0.3 * mags], axis=1)
    res = dispersion_curves(flex, ext, xi)
    jumps = np.abs(np.diff(res.flexural, axis=0))
    dk = np.linalg.norm(np.diff(xi, axis=0), axis=1)
    slope = jumps / dk[:, None]
    # group-velocity-like bound: no ordering artifacts beyond a smooth slope
    assert np.max(slope) < 50.0 * np.median(slope + 1e-12)


def test_positivity_random_sweep(rng):
    for _ in range(20):
        p = random_material(rng)
        _, _, flex, ext = make_ops(p, rng.uniform(0.05, 0.5))
        xi = rng.uniform(-20, 20, size=(10, 2))
        res = dispersion_curves(flex, ext, xi)
        assert np.all(res.flexural >= 0.0)
        assert np.all(res.extensional >= 0.0)


def test_extensional_cutoffs(classical_ops, rng):
    # N ~ 0: all three cutoffs vanish (the drilling cutoff scales with N)
    _, _, _, ext0 = classical_ops
    rep = cutoff_frequencies(ext0)
    assert rep.zero_mode_count >= 2
    assert np.max(rep.frequencies) < 1e-6

    # N > 0: the drilling microrotation picks up the cutoff 2 sqrt(alpha/J3)
    p = random_material(rng)
    _, _, _, ext = make_ops(p, 0.3)
    rep = cutoff_frequencies(ext)
    assert rep.zero_mode_count == 2
    expected = 2.0 * math.sqrt(p.alpha / p.J[2])
    assert rep.frequencies[-1] == pytest.approx(expected, rel=1e-10)


def test_flexural_cutoffs_monotone_in_n(rng):
    base = dict(E=1.0, nu=0.3, l_t=0.05, l_b=0.05, Psi=1.0, rho=1.0,
                J=(1.0, 1.0, 1.0))
    prev = None
    for N in (0.1, 0.3, 0.5, 0.7, 0.9):
        p = material_from_technical(N=N, **base)
        _, _, flex, _ = make_ops(p, 0.1)
        rep = cutoff_frequencies(flex)
        micro = np.sort(rep.frequencies)[1:4]  # nonzero micropolar cutoffs
        if prev is not None:
            assert np.all(micro >= prev - 1e-12)
        prev = micro


def test_modes_deterministic_phase(micro_ops):
    _, _, flex, ext = micro_ops
    res = dispersion_curves(flex, ext, [[1.3, 0.4]], with_modes=True)
    modes = res.flexural_modes[0]
    for j in range(6):
        i = np.argmax(np.abs(modes[:, j]))
        pivot = modes[i, j]
        assert abs(pivot.imag) < 1e-12 * abs(pivot)
        assert pivot.real > 0


def test_non_hermitian_symbol_raises(micro_ops):
    _, _, flex, _ = micro_ops
    bad_coeffs = flex.coeffs.copy()
    bad_coeffs[0, 5, 0] *= -1.0  # break the zero-order symmetry
    bad = dataclasses.replace(flex, coeffs=bad_coeffs)
    with pytest.raises(NonConservativeSymbolError):
        dispersion_curves(bad, flex, [[0.0, 0.0]])


def test_default_wavevectors_shape():
    xi = default_wavevectors(n=30)
    assert xi.shape[1] == 2
    assert np.all(np.linalg.norm(xi, axis=1) > 0)
