"""Predefined-time arbitrary-order exact differentiation with time-base generator gains."""
from .baselines import HollowayConfig, SeeberConfig, holloway_correction, holloway_rhs, seeber_correction, seeber_rhs
from .levant import GrowthBound, LevantParams, chi_at, default_params, levant_rhs, phi_correction, sgn_pow
from .predeftime import (
    DiffConfig,
    DiffState,
    Filtering,
    GainSaturationError,
    correction_H,
    from_scaled_coords,
    rhs_filtering,
    rhs_plain,
    rhs_scaled_tau,
    to_scaled_coords,
)
from .structmat import StructuralMatrices, build_structure, lambda_diag, make_A, unit_lower_inverse
from .tbg import (
    CustomOmega,
    GainSaturationWarning,
    Rational,
    Reciprocal,
    Secant,
    Tangent,
    TbgGain,
    kappa_at,
    make_gain,
    omega_at,
    phi_at,
    phi_inv_at,
    validate_tbg,
)

__version__ = "0.1.0"

__all__ = [
    "HollowayConfig", "SeeberConfig", "holloway_correction", "holloway_rhs", "seeber_correction", "seeber_rhs",
    "GrowthBound", "LevantParams", "chi_at", "default_params", "levant_rhs", "phi_correction", "sgn_pow",
    "DiffConfig", "DiffState", "Filtering", "GainSaturationError", "correction_H", "from_scaled_coords",
    "rhs_filtering", "rhs_plain", "rhs_scaled_tau", "to_scaled_coords",
    "StructuralMatrices", "build_structure", "lambda_diag", "make_A", "unit_lower_inverse",
    "CustomOmega", "GainSaturationWarning", "Rational", "Reciprocal", "Secant", "Tangent", "TbgGain",
    "kappa_at", "make_gain", "omega_at", "phi_at", "phi_inv_at", "validate_tbg",
]
