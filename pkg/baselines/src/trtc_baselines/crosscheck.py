"""Three-way comparison of the solvers from a common initial point."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from trtcbeam.channel import GeometryConfig, build_instance
from trtcbeam.mm import initial_beamformer, solve as mm_solve
from trtcbeam.model import SystemConfig

from .penalty import PenaltySchedule, penalty_solve
from .socp import socp_solve

ORDER_SLACK = 0.05  # relative slack on each ordering inequality


@dataclass(frozen=True)
class SeedResult:
    seed: int
    objectives: dict          # algorithm -> final max-min objective (nats)
    gaps: dict                # (a, b) -> signed symmetric relative gap
    ordering_ok: bool


@dataclass(frozen=True)
class CrosscheckReport:
    rows: tuple
    majority_ok: bool

    def satisfied_count(self):
        return sum(r.ordering_ok for r in self.rows)


def relative_gap(a, b):
    """Signed gap, symmetric under swap up to sign."""
    denom = 0.5 * (abs(a) + abs(b))
    return (a - b) / denom if denom > 0 else 0.0


def ordering_satisfied(objectives, slack=ORDER_SLACK):
    """penalty <= mm <= socp, each inequality with relative slack."""
    pen, mm, socp = objectives["penalty"], objectives["mm"], objectives["socp"]
    return pen <= mm * (1 + slack) + 1e-12 and mm <= socp * (1 + slack) + 1e-12


def compare_objectives(seed, objectives, slack=ORDER_SLACK):
    algos = sorted(objectives)
    gaps = {
        (a, b): relative_gap(objectives[a], objectives[b])
        for i, a in enumerate(algos) for b in algos[i + 1:]
    }
    return SeedResult(
        seed=seed, objectives=dict(objectives), gaps=gaps,
        ordering_ok=ordering_satisfied(objectives, slack),
    )


def _crosscheck_one(seed, N, G, users_per_group, P_t, geometry, slack, schedule):
    cfg = SystemConfig(
        N=N, G=G, group_of=tuple(int(g) for g in np.repeat(np.arange(G), users_per_group)),
        P_t=P_t, rng_seed=seed,
    )
    ch = build_instance(cfg, geometry).channels
    f0 = initial_beamformer(cfg, ch)
    objectives = {
        "mm": float(mm_solve(cfg, ch, f0).objective_trace[-1]),
        "socp": float(socp_solve(cfg, ch, f0).objective_trace[-1]),
        "penalty": float(
            penalty_solve(cfg, ch, np.outer(f0.reshape(-1), f0.reshape(-1).conj()),
                          schedule).objective_trace[-1]
        ),
    }
    return compare_objectives(seed, objectives, slack)


def run_crosscheck(seeds, N=16, G=2, users_per_group=2, P_t=0.01,
                   geometry=None, slack=ORDER_SLACK, schedule=None, workers=1):
    """Run all three algorithms per seed from one common initial point.

    Seeds are independent instances; workers > 1 runs them on a process
    pool with results ordered by seed position regardless of completion.
    """
    geometry = geometry if geometry is not None else GeometryConfig()
    schedule = schedule if schedule is not None else PenaltySchedule()
    args = [(seed, N, G, users_per_group, P_t, geometry, slack, schedule) for seed in seeds]
    if workers <= 1:
        rows = [_crosscheck_one(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_crosscheck_one, *zip(*args)))
    rows = tuple(rows)
    majority = sum(r.ordering_ok for r in rows) > len(rows) / 2
    return CrosscheckReport(rows=rows, majority_ok=majority)
