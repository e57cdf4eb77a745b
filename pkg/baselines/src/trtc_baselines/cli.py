"""Benchmark CLI for the reference solvers.

Accepts the same JSON config and flags as trtcbeam-bench and writes the
same CSV/JSON row schema; only the default algorithm set differs.
"""

import sys

from trtcbeam import cli as primary_cli
from trtcbeam.bench import emit, run_experiment


def main(argv=None):
    parser = primary_cli.build_parser()
    parser.prog = "trtc-baselines-bench"
    args = parser.parse_args(argv)
    if not args.algo:
        args.algo = ["socp", "penalty"]
    try:
        spec = primary_cli.spec_from_args(args)
        rows = run_experiment(spec, workers=args.workers)
        fmt = args.format or ("json" if str(args.out).endswith(".json") else "csv")
        emit(rows, args.out, fmt)
    except Exception as e:  # same diagnostics contract as the primary CLI
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
