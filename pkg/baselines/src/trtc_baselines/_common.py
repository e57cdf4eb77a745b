"""Shared pieces: normalization, report type, robust subproblem solving."""

import logging
import warnings
from dataclasses import dataclass, field

import cvxpy as cp
import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BaselineReport:
    """Mirrors the primary solver's report so drivers can treat them alike."""

    objective_trace: np.ndarray
    iterations: int
    converged: bool
    wall_time: float
    final_f: np.ndarray = field(repr=False)


def normalized_channels(cfg, ch):
    """Channels scaled so the noise power is 1 and the element budget is 1.

    With h_tilde = h * sqrt(P_t) / sigma and f_tilde = f / sqrt(P_t), every
    SINR (hence every rate) is unchanged, but the conic subproblems are
    well conditioned for interior-point solvers.
    """
    return ch.h * np.sqrt(cfg.P_t / ch.sigma2)[:, None]


def solve_conic(problem):
    """Solve with an interior-point method first, fall back to ADMM.

    Returns True when the problem reports a usable (possibly inaccurate)
    solution; raises RuntimeError with the solver status otherwise.
    """
    attempts = (
        {"solver": cp.CLARABEL},
        {"solver": cp.SCS, "eps": 1e-9, "max_iters": 100_000},
    )
    last = None
    for kwargs in attempts:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", UserWarning)  # inaccurate-solution notice
                problem.solve(**kwargs)
        except cp.error.SolverError as e:
            last = str(e)
            continue
        if problem.status in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
            if problem.status == cp.OPTIMAL_INACCURATE:
                logger.debug("subproblem solved inaccurately by %s", kwargs["solver"])
            return
        last = problem.status
    raise RuntimeError(f"convex subproblem failed: {last}")
