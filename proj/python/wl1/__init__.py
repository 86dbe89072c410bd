"""Weighted l1 recovery: thresholds, polytope angles, and solvers."""

from ._core import (
    AngleEstimate,
    BoundTerm,
    DomainError,
    ExponentPoint,
    ExponentWitness,
    ExternalAngle,
    ExternalExponent,
    FacePair,
    FailureBound,
    FiniteModel,
    InternalExponent,
    LpSolution,
    LpStatus,
    ModelInstance,
    NullSpaceReport,
    NullSpaceVerdict,
    OptimalWeight,
    RobustnessConstant,
    SignalClass,
    SparsityModel,
    ThresholdKind,
    ThresholdResult,
    WeightCurvePoint,
    Wl1Error,
    __version__,
    delta_c,
    external_angle,
    failure_bound,
    internal_angle,
    null_space_condition_check,
    optimal_weight,
    psi_com,
    psi_ext,
    psi_int,
    psi_tot,
    recovery_success,
    robustness_constant,
    sample_model_instance,
    solve_weighted_l1,
)

__all__ = [
    "AngleEstimate",
    "BoundTerm",
    "DomainError",
    "ExponentPoint",
    "ExponentWitness",
    "ExternalAngle",
    "ExternalExponent",
    "FacePair",
    "FailureBound",
    "FiniteModel",
    "InternalExponent",
    "LpSolution",
    "LpStatus",
    "ModelInstance",
    "NullSpaceReport",
    "NullSpaceVerdict",
    "OptimalWeight",
    "RobustnessConstant",
    "SignalClass",
    "SparsityModel",
    "ThresholdKind",
    "ThresholdResult",
    "WeightCurvePoint",
    "Wl1Error",
    "__version__",
    "delta_c",
    "external_angle",
    "failure_bound",
    "internal_angle",
    "null_space_condition_check",
    "optimal_weight",
    "psi_com",
    "psi_ext",
    "psi_int",
    "psi_tot",
    "recovery_success",
    "robustness_constant",
    "sample_model_instance",
    "solve_weighted_l1",
]
