import numpy as np
import pytest

from cosserat_plate.dynamics import (
    ConstantLoad,
    LoadFunctions,
    ModelConfig,
    assemble,
    static_solve,
)
from cosserat_plate.hpr import (
    HPRFunctional,
    HPRState,
    equilibrium_state,
    hpr_functional,
    random_admissible_perturbation,
)
from cosserat_plate.material import material_from_technical
from cosserat_plate.plate_fields import (
    KINEMATIC_FIELDS,
    STRESS_FIELDS,
    PlateKinematics,
    PlateStress,
)

ALL_CLAMPED = {e: "clamped" for e in ("left", "right", "bottom", "top")}


def make_model(p_load=0.0, nx=13, ny=13):
    mat = material_from_technical(E=1.0, nu=0.3, N=0.35, l_t=0.05, l_b=0.06,
                                  Psi=0.9, rho=1.0, J=(0.2, 0.2, 0.2))
    loads = LoadFunctions(p=ConstantLoad(p_load)) if p_load else LoadFunctions()
    cfg = ModelConfig(material=mat, h=0.1, a=1.0, b=1.0, nx=nx, ny=ny,
                      bc=dict(ALL_CLAMPED), loads=loads)
    return assemble(cfg)


def zero_state(model):
    z = {n: np.zeros((model.nx, model.ny)) for n in KINEMATIC_FIELDS}
    s = {n: np.zeros((model.nx, model.ny)) for n in STRESS_FIELDS}
    return HPRState(u=PlateKinematics(**z), s=PlateStress(**s))


def test_zero_state_zero_loads_zero_value():
    model = make_model(0.0)
    assert hpr_functional(model, zero_state(model)) == 0.0


def test_stationary_at_static_solution():
    model = make_model(p_load=1.0)
    kin, _ = static_solve(model)
    eq = equilibrium_state(model, kin)
    F = HPRFunctional(model)
    rng = np.random.default_rng(4)
    for _ in range(5):
        d = random_admissible_perturbation(model, rng)
        assert F.stationarity_measure(eq, d) <= 1e-8


def test_random_state_not_stationary():
    model = make_model(p_load=1.0)
    rng = np.random.default_rng(5)
    bad = random_admissible_perturbation(model, rng)
    state = HPRState(u=bad.u, s=bad.s)
    F = HPRFunctional(model)
    vals = [F.stationarity_measure(state, random_admissible_perturbation(model, rng))
            for _ in range(5)]
    assert min(vals) > 1e-3


def test_derivative_detects_wrong_stress():
    """Perturbing only the resultant fields away from the constitutive
    image breaks stationarity through the compliance residual."""
    model = make_model(p_load=1.0)
    kin, _ = static_solve(model)
    eq = equilibrium_state(model, kin)
    F = HPRFunctional(model)
    rng = np.random.default_rng(6)
    d = random_admissible_perturbation(model, rng)
    # move the state's stress off the constitutive image
    off = HPRState(u=eq.u, s=PlateStress(**{
        n: np.asarray(getattr(eq.s, n)) + 0.1 * np.asarray(getattr(d.s, n))
        for n in STRESS_FIELDS
    }))
    assert F.stationarity_measure(off, d) > 1e3 * F.stationarity_measure(eq, d)


def test_value_quadratic_in_state():
    model = make_model(p_load=0.0)
    rng = np.random.default_rng(7)
    d = random_admissible_perturbation(model, rng)
    F = HPRFunctional(model)
    v1 = F.value(HPRState(u=d.u, s=d.s))
    v2 = F.value(HPRState(u=d.u, s=d.s).scaled(2.0))
    v_half = F.value(HPRState(u=d.u, s=d.s).scaled(0.5))
    # pure quadratic at zero loads: value scales with the square
    assert v2 == pytest.approx(4.0 * v1, rel=1e-10)
    assert v_half == pytest.approx(0.25 * v1, rel=1e-10)


def test_kinetic_bilinear_term_enters():
    model = make_model(p_load=0.0)
    rng = np.random.default_rng(8)
    d = random_admissible_perturbation(model, rng)
    st = HPRState(u=d.u, s=d.s)
    accel = PlateKinematics(**{
        n: np.ones((model.nx, model.ny)) for n in KINEMATIC_FIELDS
    })
    with_acc = HPRState(u=d.u, s=d.s, accel=accel)
    F = HPRFunctional(model)
    dens_expected = float(np.sum(
        np.asarray(
            __import__("cosserat_plate.plate_fields", fromlist=["kinetic_density"])
            .kinetic_density(accel, d.u, model.inertia)
        )
    )) * model.cell_area
    assert F.value(with_acc) - F.value(st) == pytest.approx(dens_expected,
                                                            rel=1e-7)
