"""Bistable (ir)rationality in classical and quantum two-player games."""
from .classical import (
    EquilibriumKind,
    EquilibriumPoint,
    delta_m,
    equilibrium_segments,
    find_equilibria,
    find_mixed_ne,
    grid_equilibrium_mask,
    utility_pair,
)
from .core import (
    DEFAULT_PAYOFFS,
    BistableParam,
    ConfigError,
    DegenerateError,
    DomainError,
    GamePreset,
    OutcomeDistribution,
    PayoffMatrix,
    QuasiProbabilityError,
    ScenarioBinding,
    ScenarioMode,
    bistable_transform,
    complement_transform,
    outcome_distribution,
    validate_preset,
)
from .montecarlo import ClassicalTarget, QuantumTarget, SimulationSpec, sample_classical, sample_quantum
from .quantum import (
    QuantumStrategy,
    Validity,
    closed_form_expectations,
    final_state,
    kraus_set,
    ne_grid_search,
    outcome_probabilities,
    strategy_unitary,
    utility_pair_quantum,
)

__version__ = "0.1.0"

__all__ = [
    "bistable_transform",
    "BistableParam",
    "ClassicalTarget",
    "closed_form_expectations",
    "complement_transform",
    "ConfigError",
    "DEFAULT_PAYOFFS",
    "DegenerateError",
    "delta_m",
    "DomainError",
    "equilibrium_segments",
    "EquilibriumKind",
    "EquilibriumPoint",
    "final_state",
    "find_equilibria",
    "find_mixed_ne",
    "GamePreset",
    "grid_equilibrium_mask",
    "kraus_set",
    "ne_grid_search",
    "outcome_distribution",
    "outcome_probabilities",
    "OutcomeDistribution",
    "PayoffMatrix",
    "QuantumStrategy",
    "QuantumTarget",
    "QuasiProbabilityError",
    "sample_classical",
    "sample_quantum",
    "ScenarioBinding",
    "ScenarioMode",
    "SimulationSpec",
    "strategy_unitary",
    "utility_pair",
    "utility_pair_quantum",
    "validate_preset",
    "Validity",
]
