"""Dynamics of thin Cosserat (micropolar) elastic plates.

Layers, bottom-up: raw moduli and derived constants (`material`), the 3D
constitutive ground truth (`cosserat3d`), plate field containers
(`plate_fields`), the plate constitutive algebra (`plate_constitutive`),
the flexural/extensional governing operators (`operators`), plane-wave
dispersion (`dispersion`), finite-difference statics and explicit dynamics
(`dynamics`), the mixed variational diagnostic (`hpr`) and the verification
suites (`verification`).
"""

from .material import (
    MaterialParams,
    MaterialError,
    ReciprocalParams,
    TechnicalConstants,
    ValidationReport,
    material_from_technical,
    reciprocal_constants,
    technical_constants,
    validate_parameters,
)
from .cosserat3d import (
    Strain3D,
    Stress3D,
    energy_densities_3d,
    strain_from_stress_3d,
    stress_from_strain_3d,
)
from .plate_fields import (
    InertiaSet,
    LoadSet,
    PlateKinematics,
    PlateStrain,
    PlateStress,
    inertia_constants,
    kinetic_density,
    kinetic_energy_density,
    weighted_from_microrotation,
)
from .plate_constitutive import (
    internal_work_density,
    plate_energy_density,
    resultants_from_profiles,
    strain_from_kinematics,
    strain_from_stress,
    stress_from_kinematics,
    thickness_profiles,
)
from .operators import (
    ExtensionalOperator,
    FlexuralOperator,
    TractionOperator,
    build_extensional,
    build_flexural,
    build_traction,
    coefficient_diff_table,
    operator_residual_oracle,
)
from .dispersion import (
    CutoffReport,
    DispersionResult,
    NonConservativeSymbolError,
    cutoff_frequencies,
    dispersion_curves,
)
from .dynamics import (
    ConfigError,
    ConstantLoad,
    DiscreteModel,
    DiscreteState,
    EdgeBC,
    EnergyLog,
    GaussianPulseLoad,
    InstabilityError,
    LoadFunctions,
    ModelConfig,
    SingularSystemError,
    SinusoidalLoad,
    assemble,
    simulate,
    stable_dt,
    static_solve,
    step,
)
from .hpr import (
    HPRFunctional,
    HPRState,
    equilibrium_state,
    hpr_functional,
    random_admissible_perturbation,
)

__version__ = "0.1.0"
