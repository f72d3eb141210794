"""Command-line interface: flags, outputs, and the documented exit-code map."""

import json
import math

import numpy as np
import pytest

from btlrank.cli import (
    EXIT_IO,
    EXIT_NO_MLE,
    EXIT_OK,
    EXIT_USAGE,
    main,
)
from btlrank.io import read_schedule_csv, read_scores_csv


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenerate:
    def test_banded_counts(self, tmp_path, capsys):
        out = tmp_path / "sched.csv"
        code, stdout, _ = run_cli(
            capsys, "generate", "--kind", "banded", "--d", "100", "--W", "10",
            "--T", "5", "--out", str(out),
        )
        assert code == EXIT_OK
        schedule = read_schedule_csv(out)
        # band 0 < |i-j| <= 10 on 100 items: 945 pairs, 4725 comparisons
        assert schedule.n_edges == 945
        assert schedule.n == 4725

    def test_complete_small(self, tmp_path, capsys):
        out = tmp_path / "sched.csv"
        code, _, _ = run_cli(
            capsys, "generate", "--kind", "complete", "--d", "4", "--T", "1",
            "--out", str(out),
        )
        assert code == EXIT_OK
        assert read_schedule_csv(out).n_edges == 6

    def test_barbell_odd_d_is_usage_error(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "generate", "--kind", "barbell", "--d", "7", "--T", "2",
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == EXIT_USAGE
        assert "even" in err

    def test_missing_required_flag_is_usage_error(self, capsys):
        assert main(["generate", "--kind", "complete", "--d", "4"]) == EXIT_USAGE
        capsys.readouterr()

    def test_scores_and_outcomes_emission(self, tmp_path, capsys):
        sched = tmp_path / "s.csv"
        scores = tmp_path / "w.csv"
        outcomes = tmp_path / "o.csv"
        code, _, _ = run_cli(
            capsys, "generate", "--kind", "star", "--d", "6", "--T", "9",
            "--out", str(sched), "--scores", "even:2.0", "--scores-out", str(scores),
            "--sample-seed", "11", "--outcomes-out", str(outcomes),
        )
        assert code == EXIT_OK
        w = read_scores_csv(scores)
        assert w.d == 6
        assert abs(w.values.sum()) < 1e-9
        lines = outcomes.read_text().strip().split("\n")
        assert lines[0] == "i,j,n_ij,a_ij"
        assert len(lines) == 6  # header + 5 star edges

    def test_gaussian_scores_spec(self, tmp_path, capsys):
        scores = tmp_path / "w.csv"
        code, _, _ = run_cli(
            capsys, "generate", "--kind", "complete", "--d", "8", "--T", "1",
            "--out", str(tmp_path / "s.csv"), "--scores", "gaussian:1.5:42",
            "--scores-out", str(scores),
        )
        assert code == EXIT_OK
        w = read_scores_csv(scores)
        assert w.d == 8
        assert abs(w.values.sum()) < 1e-9

    def test_bad_scores_spec(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "generate", "--kind", "complete", "--d", "4", "--T", "1",
            "--out", str(tmp_path / "s.csv"), "--scores", "uniform:1",
            "--scores-out", str(tmp_path / "w.csv"),
        )
        assert code == EXIT_USAGE
        assert "even:B" in err


class TestFit:
    def test_two_item_closed_form(self, tmp_path, capsys):
        data = tmp_path / "data.csv"
        data.write_text("i,j,n_ij,a_ij\n0,1,4,3\n")
        code, stdout, _ = run_cli(capsys, "fit", str(data))
        assert code == EXIT_OK
        payload = json.loads(stdout)
        assert payload["converged"] is True
        np.testing.assert_allclose(
            payload["estimate"],
            [0.5 * math.log(3.0), -0.5 * math.log(3.0)],
            atol=1e-8,
        )

    def test_undefeated_item_exits_3(self, tmp_path, capsys):
        data = tmp_path / "data.csv"
        data.write_text("i,j,n_ij,a_ij\n0,1,4,4\n1,2,4,2\n0,2,4,4\n")
        code, stdout, err = run_cli(capsys, "fit", str(data))
        assert code == EXIT_NO_MLE
        payload = json.loads(stdout)
        assert payload["existence"] == "fails_ford"
        assert payload["estimate"] is None
        assert "exist" in err

    def test_balanced_data_gives_zero_scores(self, tmp_path, capsys):
        data = tmp_path / "data.csv"
        data.write_text("i,j,n_ij,a_ij\n0,1,4,2\n1,2,4,2\n0,2,4,2\n")
        code, stdout, _ = run_cli(capsys, "fit", str(data), "--solver", "newton")
        assert code == EXIT_OK
        np.testing.assert_allclose(json.loads(stdout)["estimate"], 0.0, atol=1e-10)

    def test_malformed_csv_exits_2(self, tmp_path, capsys):
        data = tmp_path / "data.csv"
        data.write_text("i,j,n_ij,a_ij\n0,1,4,x\n")
        code, _, err = run_cli(capsys, "fit", str(data))
        assert code == EXIT_USAGE
        assert "line 2" in err

    def test_missing_file_exits_5(self, tmp_path, capsys):
        code, _, err = run_cli(capsys, "fit", str(tmp_path / "nope.csv"))
        assert code == EXIT_IO


class TestCheckExistence:
    def test_ford_check_on_outcomes(self, tmp_path, capsys):
        data = tmp_path / "data.csv"
        data.write_text("i,j,n_ij,a_ij\n0,1,4,2\n1,2,4,2\n0,2,4,2\n")
        code, stdout, _ = run_cli(capsys, "check-existence", "--outcomes", str(data))
        assert code == EXIT_OK
        assert json.loads(stdout) == {"ford_condition": True}

    def test_spectral_forecast(self, tmp_path, capsys):
        sched = tmp_path / "s.csv"
        scores = tmp_path / "w.csv"
        run_cli(
            capsys, "generate", "--kind", "complete", "--d", "10", "--T", "5",
            "--out", str(sched), "--scores", "even:0.5", "--scores-out", str(scores),
        )
        code, stdout, _ = run_cli(
            capsys, "check-existence", "--schedule", str(sched), "--scores", str(scores)
        )
        assert code == EXIT_OK
        payload = json.loads(stdout)
        assert set(payload) == {"lambda2_fisher", "threshold", "satisfied", "failure_bound"}

    def test_requires_some_input(self, capsys):
        code, _, err = run_cli(capsys, "check-existence")
        assert code == EXIT_USAGE


class TestSpectralAndBounds:
    @pytest.fixture()
    def schedule_and_scores(self, tmp_path, capsys):
        sched = tmp_path / "s.csv"
        scores = tmp_path / "w.csv"
        run_cli(
            capsys, "generate", "--kind", "banded", "--d", "30", "--W", "5",
            "--T", "4", "--out", str(sched), "--scores", "even:1.0",
            "--scores-out", str(scores),
        )
        return sched, scores

    def test_spectral_summary(self, schedule_and_scores, capsys):
        sched, scores = schedule_and_scores
        code, stdout, _ = run_cli(
            capsys, "spectral", "--schedule", str(sched), "--scores", str(scores)
        )
        assert code == EXIT_OK
        payload = json.loads(stdout)
        assert payload["lambda2"] > 0
        assert payload["lambda2"] <= payload["lambda_max"]
        assert payload["kappa"] >= 1.0

    def test_spectral_without_scores_has_undefined_kappa(self, schedule_and_scores, capsys):
        sched, _ = schedule_and_scores
        code, stdout, _ = run_cli(capsys, "spectral", "--schedule", str(sched))
        assert code == EXIT_OK
        assert json.loads(stdout)["kappa"] is None

    def test_bounds_prints_both_families(self, schedule_and_scores, capsys):
        sched, scores = schedule_and_scores
        code, stdout, _ = run_cli(
            capsys, "bounds", "--schedule", str(sched), "--scores", str(scores),
            "--t", "2.0",
        )
        assert code == EXIT_OK
        payload = json.loads(stdout)
        assert payload["ours"]["kind"] == "ours_l2"
        assert payload["shah"]["kind"] == "shah_l2"
        assert payload["ours"]["value"] > 0
        assert payload["shah"]["value"] >= payload["ours"]["value"]
        assert payload["existence"]["satisfied"] in (True, False)
        assert payload["ours"]["inputs"]["t"] == 2.0


class TestSimulate:
    def small_config(self, tmp_path) -> str:
        payload = {
            "topology": {"kind": "complete", "d": 6, "T": 4, "W": None, "p": None, "seed": None},
            "score_model": {"kind": "even_spread", "B": 1.0},
            "sweep": {"parameter": "B", "values": [0.5, 1.0]},
            "replicates": 4,
            "t_value": 1.0,
            "base_seed": 7,
            "solver": "newton",
        }
        path = tmp_path / "config.json"
        path.write_text(json.dumps(payload))
        return str(path)

    def test_dry_run_touches_nothing(self, tmp_path, capsys):
        config = self.small_config(tmp_path)
        out_dir = tmp_path / "results"
        code, stdout, _ = run_cli(
            capsys, "simulate", config, "--out", str(out_dir), "--dry-run"
        )
        assert code == EXIT_OK
        assert "config ok" in stdout
        assert not out_dir.exists()

    def test_run_writes_results(self, tmp_path, capsys):
        config = self.small_config(tmp_path)
        out_dir = tmp_path / "results"
        code, stdout, _ = run_cli(capsys, "simulate", config, "--out", str(out_dir))
        assert code == EXIT_OK
        lines = (out_dir / "results.csv").read_text().strip().split("\n")
        assert len(lines) == 3
        assert (out_dir / "results.json").exists()

    def test_invalid_config_exits_2(self, tmp_path, capsys):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"topology": {"kind": "complete"}}))
        code, _, err = run_cli(capsys, "simulate", str(path), "--out", str(tmp_path / "o"))
        assert code == EXIT_USAGE

    def test_threads_flag_gives_same_results(self, tmp_path, capsys):
        config = self.small_config(tmp_path)
        a, b = tmp_path / "a", tmp_path / "b"
        assert run_cli(capsys, "simulate", config, "--out", str(a))[0] == EXIT_OK
        assert run_cli(capsys, "simulate", config, "--out", str(b), "--threads", "3")[0] == EXIT_OK
        assert (a / "results.csv").read_bytes() == (b / "results.csv").read_bytes()

    def test_thread_env_var_honored(self, tmp_path, capsys, monkeypatch):
        config = self.small_config(tmp_path)
        a, b = tmp_path / "env", tmp_path / "flag"
        monkeypatch.setenv("BTLRANK_THREADS", "2")
        assert run_cli(capsys, "simulate", config, "--out", str(a))[0] == EXIT_OK
        # the explicit flag wins over the environment
        assert run_cli(capsys, "simulate", config, "--out", str(b), "--threads", "1")[0] == EXIT_OK
        assert (a / "results.csv").read_bytes() == (b / "results.csv").read_bytes()


class TestHelp:
    def test_every_subcommand_has_help(self, capsys):
        for cmd in ("generate", "fit", "check-existence", "spectral", "bounds", "simulate"):
            code = main([cmd, "--help"])
            captured = capsys.readouterr()
            assert code == 0
            assert "usage" in captured.out
