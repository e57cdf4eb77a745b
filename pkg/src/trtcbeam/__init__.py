"""Max-min rate multigroup multicast beamforming for transmissive-RIS
transceivers under per-element power constraints."""

from .bench import CapabilityError, ExperimentSpec, ResultRow, emit, read_rows, run_experiment
from .channel import (
    GeometryConfig,
    InstanceDraw,
    build_instance,
    db_to_linear,
    dbm_to_watts,
    draw_rician,
    path_loss,
)
from .mm import (
    MMOptions,
    SolverReport,
    accelerated_step,
    fixed_point_step,
    initial_beamformer,
    solve,
)
from .model import (
    ChannelSet,
    SystemConfig,
    element_power,
    element_powers,
    is_feasible,
    nats_to_bits,
    objective,
    sinr,
    user_rate,
    user_rates,
)
from .wmmse import AuxiliaryState, QuadCoeffs, quad_coeffs, update_aux, update_beta, update_omega, variational_rate

__version__ = "0.1.0"

__all__ = [
    "AuxiliaryState",
    "CapabilityError",
    "ChannelSet",
    "ExperimentSpec",
    "GeometryConfig",
    "InstanceDraw",
    "MMOptions",
    "QuadCoeffs",
    "ResultRow",
    "SolverReport",
    "SystemConfig",
    "accelerated_step",
    "build_instance",
    "db_to_linear",
    "dbm_to_watts",
    "draw_rician",
    "element_power",
    "element_powers",
    "emit",
    "fixed_point_step",
    "initial_beamformer",
    "is_feasible",
    "nats_to_bits",
    "objective",
    "path_loss",
    "quad_coeffs",
    "read_rows",
    "run_experiment",
    "sinr",
    "solve",
    "update_aux",
    "update_beta",
    "update_omega",
    "user_rate",
    "user_rates",
    "variational_rate",
]
