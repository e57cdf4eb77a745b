"""Convex-programming reference solvers for cross-validating the
low-complexity max-min multicast beamformer."""

from ._common import BaselineReport
from .crosscheck import (
    CrosscheckReport,
    SeedResult,
    compare_objectives,
    relative_gap,
    run_crosscheck,
)
from .penalty import PenaltyReport, PenaltySchedule, penalty_solve, rank_one_residual
from .socp import socp_solve, wmmse_closed_forms

__version__ = "0.1.0"

__all__ = [
    "BaselineReport",
    "CrosscheckReport",
    "PenaltyReport",
    "PenaltySchedule",
    "SeedResult",
    "compare_objectives",
    "penalty_solve",
    "rank_one_residual",
    "relative_gap",
    "run_crosscheck",
    "socp_solve",
    "wmmse_closed_forms",
]
