import numpy as np
import pytest

from trtc_baselines.crosscheck import (
    compare_objectives,
    ordering_satisfied,
    relative_gap,
    run_crosscheck,
)


class TestGaps:
    def test_identical_values_zero_gap(self):
        row = compare_objectives(0, {"mm": 2.0, "socp": 2.0, "penalty": 2.0})
        assert all(g == 0.0 for g in row.gaps.values())
        assert row.ordering_ok

    def test_antisymmetric_under_swap(self):
        for a, b in ((1.0, 3.0), (0.5, 0.2), (4.0, 4.0)):
            assert relative_gap(a, b) == -relative_gap(b, a)

    def test_zero_denominator(self):
        assert relative_gap(0.0, 0.0) == 0.0


class TestOrdering:
    def test_expected_order_accepted(self):
        assert ordering_satisfied({"penalty": 1.0, "mm": 1.5, "socp": 1.6})

    def test_slack_tolerates_small_inversions(self):
        assert ordering_satisfied({"penalty": 1.02, "mm": 1.0, "socp": 0.99})

    def test_large_violation_rejected(self):
        assert not ordering_satisfied({"penalty": 2.0, "mm": 1.0, "socp": 1.5})
        assert not ordering_satisfied({"penalty": 0.5, "mm": 2.0, "socp": 1.0})


@pytest.mark.slow
def test_crosscheck_small_smoke():
    report = run_crosscheck(seeds=range(3), N=6)
    assert len(report.rows) == 3
    for row in report.rows:
        assert set(row.objectives) == {"mm", "socp", "penalty"}
        assert all(np.isfinite(v) for v in row.objectives.values())


@pytest.mark.slow
def test_acceptance_crosscheck_ordering_20_seeds():
    """Majority of 20 common-start seeds at N=16 follow penalty <= mm <= socp (+5%)."""
    report = run_crosscheck(seeds=range(20), N=16, workers=2)
    satisfied = report.satisfied_count()
    print(f"\nordering satisfied on {satisfied}/20 seeds")
    for row in report.rows:
        o = row.objectives
        print(
            f"  seed {row.seed}: penalty={o['penalty']:.3f} mm={o['mm']:.3f} "
            f"socp={o['socp']:.3f} ok={row.ordering_ok}"
        )
    assert report.majority_ok, f"only {satisfied}/20 seeds satisfied the ordering"
