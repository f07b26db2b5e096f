"""Coupled magnetic pendulums: simulation and energy-flow control."""

from .control import FeedbackConfig, OpenLoopProfile, Polarity, feedback, feedback_decayed, open_loop
from .descriptors import (
    Descriptors,
    EnergyMatrix,
    descriptors_from_state,
    energy_matrix,
    moving_average,
    state_from_slow,
)
from .params import MagnetKit, PhysicalParams, UnitlessParams, derive_unitless, load_params, preset
from .plant import (
    CurrentPair,
    EquilibriumClass,
    MechState,
    StabilityKind,
    classify_equilibrium,
    eigenfrequencies,
    magnetic_potential,
    magnetic_torque,
    plant_rhs,
    quadratic_potential,
    stability_map,
    stick_slip_update,
)
from .sim import (
    ComparisonReport,
    ControllerSpec,
    Scenario,
    Trajectory,
    compare,
    integrate_full,
    integrate_linear_beat,
    integrate_slow,
    preset_scenario,
)
from .slowflow import (
    BeatMode,
    LambdaPair,
    LinearBeatCoeffs,
    SlowState,
    StationaryPoint,
    bessel_i,
    fast_phase_rate,
    find_stationary_points,
    linearized_coeffs,
    slow_rhs,
    streamline_field,
)

__version__ = "0.1.0"
