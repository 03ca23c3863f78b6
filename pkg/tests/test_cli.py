"""CLI subcommands and exit codes (0 ok, 1 config, 2 physics, 3 I/O)."""

import json
import os

import pytest

from qbattery.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_PHYSICS, main

TINY = {
    "scenario_id": "tiny",
    "model": "collective_decoherence",
    "model_params": {
        "omega1": 1.0, "omega2": 1.0, "Gamma1": 0.05, "Gamma2": 0.05,
        "k0r12": 0.5, "initial_state": "0+",
    },
    "t_max": 1.0,
    "n_steps": 4,
}


def write_config(tmp_path, raw, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return str(path)


class TestRun:
    def test_json_config(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TINY)
        out = tmp_path / "out"
        assert main(["run", "--scenario", cfg, "--out", str(out)]) == EXIT_OK
        assert (out / "tiny_timeseries.csv").exists()
        assert (out / "tiny_segments.csv").exists()
        assert "tiny" in capsys.readouterr().out

    def test_missing_scenario(self, capsys):
        assert main(["run", "--scenario", "does_not_exist"]) == EXIT_CONFIG
        assert "config error" in capsys.readouterr().err

    def test_invalid_config_key(self, tmp_path, capsys):
        cfg = write_config(tmp_path, dict(TINY, lambda_=1.0))
        assert main(["run", "--scenario", cfg]) == EXIT_CONFIG
        assert "lambda_" in capsys.readouterr().err

    def test_physics_violation(self, tmp_path, capsys):
        # a Hermitian unit-trace but non-positive "state" trips the
        # density-matrix invariant as soon as evolution starts
        raw = dict(TINY)
        raw["model_params"] = dict(raw["model_params"])
        raw["model_params"]["initial_state"] = [
            [1.5, 0, 0, 0], [0, -0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]
        ]
        cfg = write_config(tmp_path, raw)
        assert main(["run", "--scenario", cfg, "--out", str(tmp_path)]) == EXIT_PHYSICS
        assert "physics invariant" in capsys.readouterr().err

    def test_io_error(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TINY)
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        code = main(["run", "--scenario", cfg, "--out", str(blocker / "sub")])
        assert code == EXIT_IO
        assert "I/O error" in capsys.readouterr().err


class TestSweep:
    def test_sweep_from_config(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TINY)
        out = tmp_path / "out"
        code = main([
            "sweep", "--scenario", cfg, "--param", "T",
            "--values", "0.5,1.0", "--out", str(out),
        ])
        assert code == EXIT_OK
        ts = out / "tiny_sweep_T_timeseries.csv"
        assert ts.exists()
        body = ts.read_text()
        assert "0.5" in body and "1.0" in body

    def test_bad_values(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TINY)
        code = main(["sweep", "--scenario", cfg, "--param", "T", "--values", "a,b"])
        assert code == EXIT_CONFIG

    def test_unknown_parameter(self, tmp_path):
        cfg = write_config(tmp_path, TINY)
        code = main(["sweep", "--scenario", cfg, "--param", "nope", "--values", "1.0"])
        assert code == EXIT_CONFIG


class TestListScenarios:
    def test_lists_presets(self, capsys):
        assert main(["list-scenarios"]) == EXIT_OK
        out = capsys.readouterr().out
        for name in ("fig1", "fig3a", "fig5T", "fig8c"):
            assert name in out


class TestValidate:
    def test_filtered_checks_pass(self, capsys):
        code = main(["validate", "--filter", "damping"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "[PASS]" in out
        assert "damping_profile_limits" in out

    def test_empty_filter_is_config_error(self, capsys):
        assert main(["validate", "--filter", "zzz"]) == EXIT_CONFIG
