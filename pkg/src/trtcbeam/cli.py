"""Command-line entry point for the benchmark driver."""

import argparse
import json
import sys

from .bench import ALGORITHMS, SWEEP_AXES, CapabilityError, ExperimentSpec, emit, run_experiment


def build_parser():
    p = argparse.ArgumentParser(
        prog="trtcbeam-bench",
        description="Run max-min multicast beamforming experiments and write results.",
    )
    p.add_argument("--config", help="JSON file mirroring the experiment spec fields")
    p.add_argument("--out", default="bench_results.csv", help="output file path")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--seed", type=int, default=None, help="base RNG seed")
    p.add_argument("--algo", action="append", choices=ALGORITHMS,
                   help="algorithm to run (repeatable)")
    p.add_argument("--sweep", choices=SWEEP_AXES, default=None)
    p.add_argument("--values", default=None, help="comma-separated sweep values")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=1, help="worker threads for trials")
    return p


def spec_from_args(args):
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    # flags override file values
    if args.seed is not None:
        cfg["base_seed"] = args.seed
    if args.algo:
        cfg["algorithms"] = tuple(args.algo)
    if args.sweep is not None:
        cfg["sweep_axis"] = args.sweep
    if args.values is not None:
        cfg["sweep_values"] = tuple(float(v) for v in args.values.split(","))
    if args.trials is not None:
        cfg["trials"] = args.trials
    return ExperimentSpec.from_dict(cfg)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
        rows = run_experiment(spec, workers=args.workers)
        fmt = args.format or ("json" if str(args.out).endswith(".json") else "csv")
        emit(rows, args.out, fmt)
    except (CapabilityError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
