"""Elastic electron scattering from screened potentials with a
noncommutative-geometry correction.

Public surface: unit system and constants (:mod:`ncscatter.units`),
kinematics (:mod:`ncscatter.kinematics`), potential models
(:mod:`ncscatter.potentials`), Born amplitudes (:mod:`ncscatter.amplitude`),
cross sections (:mod:`ncscatter.cross_section`), Theta-bound estimation
(:mod:`ncscatter.bounds`), and a CLI (:mod:`ncscatter.cli`).
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .amplitude import (
    AmplitudeResult,
    born_amplitude_closed,
    born_amplitude_quadrature,
    nc_amplitude_theta,
)
from .bounds import (
    BoundCellFailure,
    BoundScanResult,
    DetectabilityCriterion,
    bound_table,
    cs_deviation,
    deviation_curve,
    estimate_bound,
)
from .cross_section import (
    CrossSectionResult,
    SeriesValidity,
    differential_cs,
    series_validity,
    total_cs_paper_series,
    total_cs_quadrature,
    total_cs_theta_quadrature,
)
from .errors import (
    AngleOutOfRange,
    DivergentCrossSection,
    DivergentIntegral,
    IncompatibleUnits,
    InvalidZ,
    NCScatterError,
    NegativeEnergy,
    NegativeTheta,
    NoBracket,
    NonpositiveRadius,
    QuadratureNonConvergence,
    UndefinedAmplitude,
    UnsupportedReduction,
    ZeroScreening,
    ZeroWaveNumber,
)
from .kinematics import Kinematics, momentum_transfer, wave_number
from .potentials import (
    BUILTIN_PRESETS,
    NCMatrix,
    PotentialKind,
    PotentialModel,
    Preset,
    bopp_shift_radius,
    build_nc_yukawa,
    coulomb,
    evaluate,
    get_preset,
    kratzer,
    load_presets,
    reduce,
    screened_kratzer,
    yukawa,
)
from .units import (
    CONSTANTS,
    PhysicalConstants,
    Quantity,
    Unit,
    convert,
    sqrt_theta_m,
    theta_angstrom2,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeResult", "AngleOutOfRange", "BUILTIN_PRESETS",
    "BoundCellFailure", "BoundScanResult", "CONSTANTS", "CrossSectionResult",
    "DetectabilityCriterion", "DivergentCrossSection", "DivergentIntegral",
    "IncompatibleUnits", "InvalidZ", "KERNEL_BACKEND", "Kinematics",
    "NCMatrix", "NCScatterError", "NegativeEnergy", "NegativeTheta",
    "NoBracket", "NonpositiveRadius", "PhysicalConstants", "PotentialKind",
    "PotentialModel", "Preset", "Quantity", "QuadratureNonConvergence",
    "SeriesValidity", "UndefinedAmplitude", "Unit", "UnsupportedReduction",
    "ZeroScreening", "ZeroWaveNumber", "bopp_shift_radius",
    "born_amplitude_closed", "born_amplitude_quadrature", "bound_table",
    "build_nc_yukawa", "convert", "coulomb", "cs_deviation",
    "deviation_curve", "differential_cs", "estimate_bound", "evaluate",
    "get_preset", "kratzer", "load_presets", "momentum_transfer",
    "nc_amplitude_theta", "reduce", "screened_kratzer", "series_validity",
    "sqrt_theta_m", "theta_angstrom2", "total_cs_paper_series",
    "total_cs_quadrature", "total_cs_theta_quadrature", "wave_number",
    "yukawa",
]
