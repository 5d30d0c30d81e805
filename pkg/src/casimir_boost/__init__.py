"""Local vacuum correlators and stress-energy of a Lorentz-boosted parallel-plate
Casimir cavity, with exact-rational checks of boundary-divergence cancellation."""

from .boosted import (
    PathComparison,
    boost_second_moments,
    divergence_audit,
    reference_boosted_tensor,
    theta_from_boosted_fields,
    verify_equivalence,
)
from .core import (
    AffineF,
    BoostSpec,
    CancellationError,
    CasimirError,
    CavityConfig,
    DomainError,
    LorentzConditionError,
    NonlinearProductError,
    SecondMomentMatrix,
    StressEnergyTensor,
    eval_affine,
    prefactor,
)
from .lorentz import Boost4, FieldBoost6, boost_matrix, field_boost_matrix, tensor_boost
from .oracle import OracleReport, fd_third_derivative_cot, lattice_sum_F, rational_replay
from .rest_frame import (
    CorrelatorSet,
    assemble_theta,
    energy_density,
    eval_F,
    force_per_area,
    momentum_density,
    reference_rest_tensor,
    rest_correlators,
    stress_from_moments,
)

__version__ = "0.1.0"

__all__ = [
    "AffineF",
    "Boost4",
    "BoostSpec",
    "CancellationError",
    "CasimirError",
    "CavityConfig",
    "CorrelatorSet",
    "DomainError",
    "FieldBoost6",
    "LorentzConditionError",
    "NonlinearProductError",
    "OracleReport",
    "PathComparison",
    "SecondMomentMatrix",
    "StressEnergyTensor",
    "assemble_theta",
    "boost_matrix",
    "boost_second_moments",
    "divergence_audit",
    "energy_density",
    "eval_F",
    "eval_affine",
    "fd_third_derivative_cot",
    "field_boost_matrix",
    "force_per_area",
    "lattice_sum_F",
    "momentum_density",
    "prefactor",
    "rational_replay",
    "reference_boosted_tensor",
    "reference_rest_tensor",
    "rest_correlators",
    "stress_from_moments",
    "tensor_boost",
    "theta_from_boosted_fields",
    "verify_equivalence",
]
