"""Trapped-ion quantum Otto heat engine simulator.

The electronic two-level component of a trapped ion works between
laser-engineered effective reservoirs (thermal, apparent negative
temperature, squeezed thermal).  The package synthesizes the reservoirs
from sideband Rabi frequencies, runs the four-stroke cycle under
closed-form, effective and full joint dynamics, and sweeps engine
efficiency against the carrier-pulse transition probability.
"""

from .cycle import (
    BathEquilibria,
    CycleConfig,
    CycleMode,
    CycleResult,
    Regime,
    StrokeEnergy,
    Tolerances,
    carrier_propagator_numeric,
    classify_regime,
    closed_form_thermo,
    engine_efficiency_formula,
    prepare_bath_equilibria,
    pulse_duration,
    reference_efficiencies,
    run_cycle_closed_form,
    run_cycle_effective,
    run_cycle_full,
    transition_probability,
)
from .lindblad import (
    DegenerateSteadyStateError,
    EquilibrationError,
    EquilibrationReport,
    EvolutionReport,
    IntegrationError,
    LindbladModel,
    equilibrate,
    evolve,
    expectation,
    liouvillian_matrix,
    steady_state,
)
from .operators import (
    SpaceLayout,
    destroy,
    hermitian_propagator,
    kron,
    partial_trace,
    thermal_state,
)
from .oscillator import (
    ModeLaserSettings,
    VSystemConfig,
    effective_mode_model,
    full_v_model,
    match_rabi_for_mode,
    quadratic_mode_moments,
)
from .reservoirs import (
    BathKind,
    EffectiveTheta,
    LaserSettings,
    ReservoirSpec,
    Statistics,
    channels_from_settings,
    effective_collapse_channels,
    full_interaction_hamiltonian,
    full_joint_model,
    gibbs_state,
    match_rabi_frequencies,
    squeezed_gibbs_state,
    theta_from_occupation,
)
from .sweep import ConfigError, SweepConfig, emit_csv, load_config, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BathEquilibria",
    "BathKind",
    "ConfigError",
    "CycleConfig",
    "CycleMode",
    "CycleResult",
    "DegenerateSteadyStateError",
    "EffectiveTheta",
    "EquilibrationError",
    "EquilibrationReport",
    "EvolutionReport",
    "IntegrationError",
    "LaserSettings",
    "LindbladModel",
    "ModeLaserSettings",
    "Regime",
    "ReservoirSpec",
    "SpaceLayout",
    "Statistics",
    "StrokeEnergy",
    "SweepConfig",
    "Tolerances",
    "VSystemConfig",
    "carrier_propagator_numeric",
    "channels_from_settings",
    "classify_regime",
    "closed_form_thermo",
    "destroy",
    "effective_collapse_channels",
    "effective_mode_model",
    "emit_csv",
    "engine_efficiency_formula",
    "equilibrate",
    "evolve",
    "expectation",
    "full_interaction_hamiltonian",
    "full_joint_model",
    "full_v_model",
    "gibbs_state",
    "hermitian_propagator",
    "kron",
    "liouvillian_matrix",
    "load_config",
    "match_rabi_for_mode",
    "match_rabi_frequencies",
    "partial_trace",
    "prepare_bath_equilibria",
    "pulse_duration",
    "quadratic_mode_moments",
    "reference_efficiencies",
    "run_cycle_closed_form",
    "run_cycle_effective",
    "run_cycle_full",
    "run_sweep",
    "squeezed_gibbs_state",
    "steady_state",
    "theta_from_occupation",
    "thermal_state",
    "transition_probability",
]
