"""Three-way comparison against the convex reference solvers.

Needs the companion baselines package (see baselines/ in the repository
root).  All solvers start from the same initial point on each seed.
"""

import numpy as np

try:
    from trtc_baselines import PenaltySchedule, run_crosscheck
except ImportError:
    raise SystemExit("install the baselines package first: pip install -e baselines/")

report = run_crosscheck(seeds=range(3), N=6, schedule=PenaltySchedule(max_iters=25))

print("seed   penalty      mm    socp   ordering ok")
for row in report.rows:
    o = row.objectives
    print(f"{row.seed:4d}   {o['penalty']:7.3f} {o['mm']:7.3f} {o['socp']:7.3f}   {row.ordering_ok}")
print(f"\nmajority satisfied: {report.majority_ok}")
print("gaps are signed, symmetric relative differences:")
for row in report.rows:
    rendered = ", ".join(f"{a} vs {b}: {g:+.3f}" for (a, b), g in row.gaps.items())
    print(f"  seed {row.seed}: {rendered}")
