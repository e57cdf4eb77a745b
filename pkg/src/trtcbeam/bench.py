"""Experiment driver: instance sweeps, solver dispatch, CSV/JSON output."""

import csv
import importlib.util
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import mm
from .channel import GeometryConfig, build_instance, dbm_to_watts
from .model import LN2, SystemConfig, objective

SWEEP_AXES = ("power_dbm", "users_per_group", "radius_m", "pathloss_exponent", "elements", "none")
ALGORITHMS = ("mm", "socp", "penalty")

CSV_HEADER = "seed,N,G,K,axis_value,algorithm,iterations,objective_nats,objective_bits,runtime_ms"
_FLOAT_FIELDS = ("axis_value", "objective_nats", "objective_bits", "runtime_ms")
_INT_FIELDS = ("seed", "N", "G", "K", "iterations")


class CapabilityError(RuntimeError):
    """A requested algorithm is not available in this build."""


@dataclass(frozen=True)
class ExperimentSpec:
    """Base instance parameters plus one sweep axis; mirrors the JSON config."""

    n_elements: int = 16
    n_groups: int = 2
    users_per_group: int = 2
    power_dbm: float = 10.0
    noise_dbm: float = -90.0
    cell_radius_m: float = 100.0
    pathloss_exponent: float = 3.6
    rician_K_dB: float = 5.0
    epsilon: float = 1e-4
    max_outer_iters: int = 100
    base_seed: int = 0
    sweep_axis: str = "none"
    sweep_values: tuple = ()
    trials: int = 1
    algorithms: tuple = ("mm",)

    def __post_init__(self):
        object.__setattr__(self, "sweep_values", tuple(self.sweep_values))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.sweep_axis not in SWEEP_AXES:
            raise ValueError(f"unknown sweep axis {self.sweep_axis!r}")
        if self.sweep_axis != "none" and not self.sweep_values:
            raise ValueError("sweep_values must be non-empty for a sweep")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        bad = set(d) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        return cls(**d)


@dataclass(frozen=True)
class ResultRow:
    seed: int
    N: int
    G: int
    K: int
    axis_value: float
    algorithm: str
    iterations: int
    objective_nats: float
    objective_bits: float
    runtime_ms: float = field(compare=False)  # wall clock; not part of row identity


def _materialize(spec, axis_value):
    """System and geometry configs for one sweep point."""
    n_elements = spec.n_elements
    users_per_group = spec.users_per_group
    power_dbm = spec.power_dbm
    cell_radius = spec.cell_radius_m
    pathloss_exponent = spec.pathloss_exponent

    if spec.sweep_axis == "power_dbm":
        power_dbm = float(axis_value)
    elif spec.sweep_axis == "users_per_group":
        users_per_group = int(axis_value)
    elif spec.sweep_axis == "radius_m":
        cell_radius = float(axis_value)
    elif spec.sweep_axis == "pathloss_exponent":
        pathloss_exponent = float(axis_value)
    elif spec.sweep_axis == "elements":
        n_elements = int(axis_value)

    group_of = tuple(int(g) for g in np.repeat(np.arange(spec.n_groups), users_per_group))
    cfg = SystemConfig(
        N=n_elements,
        G=spec.n_groups,
        group_of=group_of,
        P_t=float(dbm_to_watts(power_dbm)),
        epsilon=spec.epsilon,
        max_outer_iters=spec.max_outer_iters,
        rng_seed=spec.base_seed,
    )
    geo = GeometryConfig(
        cell_radius=cell_radius,
        pathloss_exponent=pathloss_exponent,
        rician_K_dB=spec.rician_K_dB,
        noise_dbm=spec.noise_dbm,
    )
    return cfg, geo


def _baselines():
    try:
        import trtc_baselines
    except ImportError as e:
        raise CapabilityError(
            "algorithms 'socp' and 'penalty' need the companion baselines "
            "package (trtc_baselines); install it or request 'mm' only"
        ) from e
    return trtc_baselines


def check_algorithms(algorithms):
    """Raise CapabilityError unless every requested algorithm can run."""
    if any(a in ("socp", "penalty") for a in algorithms):
        if importlib.util.find_spec("trtc_baselines") is None:
            raise CapabilityError(
                "algorithms 'socp' and 'penalty' need the companion baselines "
                "package (trtc_baselines); install it or request 'mm' only"
            )


def _run_one(spec, axis_value, trial):
    cfg, geo = _materialize(spec, axis_value)
    cfg = replace(cfg, rng_seed=spec.base_seed + trial)
    inst = build_instance(cfg, geo)
    ch = inst.channels
    f0 = mm.initial_beamformer(cfg, ch)  # common initial point for every algorithm

    rows = []
    for algo in spec.algorithms:
        if algo == "mm":
            report = mm.solve(cfg, ch, f0)
        elif algo == "socp":
            report = _baselines().socp_solve(cfg, ch, f0)
        else:
            bl = _baselines()
            f0_vec = f0.reshape(-1)
            report = bl.penalty_solve(cfg, ch, np.outer(f0_vec, f0_vec.conj()))
        final_obj = objective(cfg, ch, report.final_f)
        rows.append(
            ResultRow(
                seed=cfg.rng_seed,
                N=cfg.N,
                G=cfg.G,
                K=cfg.K,
                axis_value=float(axis_value) if spec.sweep_axis != "none" else 0.0,
                algorithm=algo,
                iterations=report.iterations,
                objective_nats=final_obj,
                objective_bits=final_obj / LN2,
                runtime_ms=report.wall_time * 1e3,
            )
        )
    return rows


def run_experiment(spec, workers=1):
    """All (sweep value x trial x algorithm) rows, ordered by (value, trial).

    Trials run on a bounded thread pool when workers > 1; ordering does not
    depend on completion order.
    """
    check_algorithms(spec.algorithms)
    values = spec.sweep_values if spec.sweep_axis != "none" else (0.0,)
    jobs = [(value, trial) for value in values for trial in range(spec.trials)]

    if workers <= 1:
        batches = [_run_one(spec, value, trial) for value, trial in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_one, spec, value, trial) for value, trial in jobs]
            batches = [f.result() for f in futures]
    return [row for batch in batches for row in batch]


def _fmt_float(x):
    return f"{x:.9g}"


def emit(rows, path, fmt="csv"):
    """Write rows to path; floats carry 9 significant digits."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown output format {fmt!r}")
    try:
        with open(path, "w", newline="") as fh:
            if fmt == "csv":
                writer = csv.writer(fh)
                writer.writerow(CSV_HEADER.split(","))
                for r in rows:
                    writer.writerow(
                        [
                            r.seed, r.N, r.G, r.K,
                            _fmt_float(r.axis_value),
                            r.algorithm,
                            r.iterations,
                            _fmt_float(r.objective_nats),
                            _fmt_float(r.objective_bits),
                            _fmt_float(r.runtime_ms),
                        ]
                    )
            else:
                payload = []
                for r in rows:
                    d = {}
                    for name in CSV_HEADER.split(","):
                        v = getattr(r, name)
                        d[name] = float(_fmt_float(v)) if name in _FLOAT_FIELDS else v
                    payload.append(d)
                json.dump(payload, fh, indent=2)
                fh.write("\n")
    except OSError as e:
        raise OSError(f"cannot write results to {path!r}: {e}") from e


def read_rows(path, fmt="csv"):
    """Parse a file written by emit back into ResultRow objects."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown output format {fmt!r}")
    rows = []
    with open(path, newline="") as fh:
        if fmt == "csv":
            reader = csv.DictReader(fh)
            records = list(reader)
        else:
            records = json.load(fh)
    for rec in records:
        kwargs = {}
        for name in CSV_HEADER.split(","):
            v = rec[name]
            if name in _INT_FIELDS:
                kwargs[name] = int(v)
            elif name in _FLOAT_FIELDS:
                kwargs[name] = float(v)
            else:
                kwargs[name] = str(v)
        rows.append(ResultRow(**kwargs))
    return rows
