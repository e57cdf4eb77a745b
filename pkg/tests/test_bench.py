import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from trtcbeam.bench import (
    CSV_HEADER,
    CapabilityError,
    ExperimentSpec,
    ResultRow,
    check_algorithms,
    emit,
    read_rows,
    run_experiment,
)
from trtcbeam import cli


QUICK = dict(n_elements=6, n_groups=2, users_per_group=1, max_outer_iters=40)


def quick_spec(**kw):
    return ExperimentSpec(**{**QUICK, **kw})


class TestSpecValidation:
    def test_defaults_ok(self):
        spec = ExperimentSpec()
        assert spec.algorithms == ("mm",)

    def test_rejects_bad_trials(self):
        with pytest.raises(ValueError):
            ExperimentSpec(trials=0)

    def test_rejects_unknown_axis(self):
        with pytest.raises(ValueError):
            ExperimentSpec(sweep_axis="bandwidth")

    def test_rejects_empty_sweep(self):
        with pytest.raises(ValueError):
            ExperimentSpec(sweep_axis="power_dbm", sweep_values=())

    def test_rejects_unknown_algorithm(self):
        with pytest.raises(ValueError):
            ExperimentSpec(algorithms=("sdp",))

    def test_rejects_unknown_config_key(self):
        with pytest.raises(ValueError):
            ExperimentSpec.from_dict({"powr_dbm": 3})


class TestRunExperiment:
    def test_single_row_cardinality(self):
        rows = run_experiment(quick_spec())
        assert len(rows) == 1
        r = rows[0]
        assert (r.N, r.G, r.K, r.algorithm) == (6, 2, 2, "mm")
        assert r.axis_value == 0.0
        assert_allclose(r.objective_bits, r.objective_nats / math.log(2.0), rtol=1e-12)

    def test_deterministic_rows(self, tmp_path):
        spec = quick_spec(trials=2)
        rows1 = run_experiment(spec)
        rows2 = run_experiment(spec)
        assert rows1 == rows2  # runtime_ms excluded from equality by design
        # emitted files agree byte-for-byte except the wall-clock column
        emit(rows1, tmp_path / "a.csv", "csv")
        emit(rows2, tmp_path / "b.csv", "csv")
        strip = lambda p: [",".join(line.split(",")[:-1])
                           for line in p.read_text().splitlines()]
        assert strip(tmp_path / "a.csv") == strip(tmp_path / "b.csv")

    def test_worker_pool_ordering(self):
        spec = quick_spec(trials=3, sweep_axis="power_dbm", sweep_values=(0.0, 10.0))
        assert run_experiment(spec, workers=3) == run_experiment(spec, workers=1)

    def test_trial_seeds_offset_from_base(self):
        rows = run_experiment(quick_spec(trials=3, base_seed=100))
        assert [r.seed for r in rows] == [100, 101, 102]

    def test_power_sweep_increases_objective(self):
        spec = quick_spec(trials=3, sweep_axis="power_dbm", sweep_values=(0.0, 15.0))
        rows = run_experiment(spec)
        lo = np.mean([r.objective_nats for r in rows if r.axis_value == 0.0])
        hi = np.mean([r.objective_nats for r in rows if r.axis_value == 15.0])
        assert hi > lo

    def test_elements_axis_changes_dimension(self):
        spec = quick_spec(trials=1, sweep_axis="elements", sweep_values=(4, 8))
        rows = run_experiment(spec)
        assert [r.N for r in rows] == [4, 8]

    def test_users_axis_changes_group_size(self):
        spec = quick_spec(trials=1, sweep_axis="users_per_group", sweep_values=(1, 3))
        rows = run_experiment(spec)
        assert [r.K for r in rows] == [2, 6]

    def test_missing_baselines_raise_capability_error(self, monkeypatch):
        import trtcbeam.bench as bench

        monkeypatch.setattr(bench.importlib.util, "find_spec", lambda name: None)
        with pytest.raises(CapabilityError):
            check_algorithms(("mm", "socp"))
        with pytest.raises(CapabilityError):
            run_experiment(quick_spec(algorithms=("penalty",)))

    def test_mm_only_never_needs_baselines(self, monkeypatch):
        import trtcbeam.bench as bench

        monkeypatch.setattr(bench.importlib.util, "find_spec", lambda name: None)
        check_algorithms(("mm",))


class TestEmit:
    def make_rows(self):
        return [
            ResultRow(seed=1, N=4, G=2, K=4, axis_value=10.0, algorithm="mm",
                      iterations=7, objective_nats=1.234567891234, objective_bits=1.781,
                      runtime_ms=12.5),
            ResultRow(seed=2, N=4, G=2, K=4, axis_value=10.0, algorithm="mm",
                      iterations=9, objective_nats=2.0, objective_bits=2.885,
                      runtime_ms=13.25),
        ]

    def test_csv_header_exact(self, tmp_path):
        path = tmp_path / "out.csv"
        emit([], path, "csv")
        assert path.read_text().splitlines() == [CSV_HEADER]

    def test_round_trip_csv(self, tmp_path):
        rows = self.make_rows()
        path = tmp_path / "r.csv"
        emit(rows, path, "csv")
        back = read_rows(path, "csv")
        assert len(back) == 2
        for a, b in zip(back, rows):
            assert a.seed == b.seed and a.algorithm == b.algorithm
            assert_allclose(a.objective_nats, b.objective_nats, rtol=1e-8)

    def test_nine_significant_digits(self, tmp_path):
        path = tmp_path / "r.csv"
        emit(self.make_rows(), path, "csv")
        line = path.read_text().splitlines()[1]
        assert "1.23456789" in line and "1.234567891" not in line

    def test_json_and_csv_agree(self, tmp_path):
        rows = self.make_rows()
        emit(rows, tmp_path / "r.csv", "csv")
        emit(rows, tmp_path / "r.json", "json")
        a = read_rows(tmp_path / "r.csv", "csv")
        b = read_rows(tmp_path / "r.json", "json")
        assert a == b
        for ra, rb in zip(a, b):
            assert ra.runtime_ms == rb.runtime_ms  # equality skips it; check explicitly

    def test_json_is_array_of_objects(self, tmp_path):
        path = tmp_path / "r.json"
        emit(self.make_rows(), path, "json")
        payload = json.loads(path.read_text())
        assert isinstance(payload, list)
        assert set(payload[0]) == set(CSV_HEADER.split(","))

    def test_write_error_carries_path(self, tmp_path):
        with pytest.raises(OSError, match="no/such"):
            emit([], tmp_path / "no" / "such" / "dir.csv", "csv")

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            emit([], tmp_path / "r.xml", "xml")


class TestCli:
    def test_basic_run_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "res.csv"
        code = cli.main([
            "--out", str(out), "--trials", "1", "--seed", "5",
            "--config", str(self.write_config(tmp_path)),
        ])
        assert code == 0
        rows = read_rows(out, "csv")
        assert rows[0].seed == 5
        assert "wrote 1 rows" in capsys.readouterr().out

    def write_config(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(QUICK))
        return path

    def test_flag_overrides_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({**QUICK, "trials": 4}))
        out = tmp_path / "r.json"
        code = cli.main(["--config", str(cfg), "--trials", "1", "--out", str(out), "--format", "json"])
        assert code == 0
        assert len(read_rows(out, "json")) == 1

    def test_sweep_flags(self, tmp_path):
        out = tmp_path / "r.csv"
        code = cli.main([
            "--config", str(self.write_config(tmp_path)), "--out", str(out),
            "--sweep", "power_dbm", "--values", "0,10", "--trials", "1",
        ])
        assert code == 0
        assert [r.axis_value for r in read_rows(out)] == [0.0, 10.0]

    def test_config_error_exits_nonzero(self, tmp_path, capsys):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"trials": 0}))
        code = cli.main(["--config", str(cfg), "--out", str(tmp_path / "r.csv")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_capability_error_exits_nonzero(self, tmp_path, capsys, monkeypatch):
        import trtcbeam.bench as bench

        monkeypatch.setattr(bench.importlib.util, "find_spec", lambda name: None)
        code = cli.main([
            "--config", str(self.write_config(tmp_path)),
            "--algo", "socp", "--out", str(tmp_path / "r.csv"),
        ])
        assert code == 1
        assert "baselines" in capsys.readouterr().err
