"""Canonical time statistics and Hermitian time-operator diagnostics for
quantum systems with discrete, nondegenerate spectra.

All types are immutable after construction and all operations are pure
functions, so everything here is safe to call from concurrent contexts.
"""

from .canonical import (
    CanonicalDensity,
    bohr_mean_density,
    density_at,
    normalized_gamma,
    verify_covariance,
)
from .denseness import (
    CauchyStep,
    cauchy_state,
    distance_to_eigenstate,
    harmonic_partial_sums,
    leading_coefficient,
    state_distance,
    uniform_vector,
    uniform_vector_orthogonality,
    zero_sum_basis,
    zero_sum_projector,
    zero_sum_projector_rank,
)
from .errors import (
    ApproximationError,
    DegeneracyError,
    DimensionError,
    MembershipError,
    NormalizationError,
    PhysicsError,
    SchemaError,
    ZeroProjectionError,
    ZeroSignalError,
)
from .operators import (
    DeviationSeries,
    OperatorMatrix,
    build_hamiltonian,
    build_time_operator,
    commutator,
    covariance_deviation,
    expectation,
    hermiticity_defect,
    membership_decay,
    project_to_zero_sum,
    spectral_norm,
    weak_commutator,
)
from .rng import SplitMix64, gaussian_complex_vector, random_state
from .spectral import (
    DEFAULT_CONFIG,
    EnergySpectrum,
    PhysicsConfig,
    QuantumState,
    build_spectrum,
    coefficient_sum,
    evolve,
    in_zero_sum_subspace,
)
from .zeroset import (
    MeasureReport,
    PeriodicApproximant,
    TrigSignal,
    bohr_mean,
    eval_f,
    find_zeros,
    paley_wiener_integral,
    periodic_approximation,
    sublevel_measure,
)

__version__ = "0.1.0"

__all__ = [
    "ApproximationError",
    "CanonicalDensity",
    "CauchyStep",
    "DEFAULT_CONFIG",
    "DegeneracyError",
    "DeviationSeries",
    "DimensionError",
    "EnergySpectrum",
    "MeasureReport",
    "MembershipError",
    "NormalizationError",
    "OperatorMatrix",
    "PeriodicApproximant",
    "PhysicsConfig",
    "PhysicsError",
    "QuantumState",
    "SchemaError",
    "SplitMix64",
    "TrigSignal",
    "ZeroProjectionError",
    "ZeroSignalError",
    "bohr_mean",
    "bohr_mean_density",
    "build_hamiltonian",
    "build_spectrum",
    "build_time_operator",
    "cauchy_state",
    "coefficient_sum",
    "commutator",
    "covariance_deviation",
    "density_at",
    "distance_to_eigenstate",
    "eval_f",
    "evolve",
    "expectation",
    "find_zeros",
    "gaussian_complex_vector",
    "harmonic_partial_sums",
    "hermiticity_defect",
    "in_zero_sum_subspace",
    "leading_coefficient",
    "membership_decay",
    "normalized_gamma",
    "paley_wiener_integral",
    "periodic_approximation",
    "project_to_zero_sum",
    "random_state",
    "spectral_norm",
    "state_distance",
    "sublevel_measure",
    "uniform_vector",
    "uniform_vector_orthogonality",
    "verify_covariance",
    "weak_commutator",
    "zero_sum_basis",
    "zero_sum_projector",
    "zero_sum_projector_rank",
]
