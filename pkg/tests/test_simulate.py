"""Monte-Carlo harness: determinism, aggregation, accounting, export formats."""

import json

import numpy as np
import pytest

from btlrank.errors import ConfigError
from btlrank.simulate import (
    RESULTS_CSV_HEADER,
    ExperimentConfig,
    ExperimentResult,
    ScoreModel,
    SweepSpec,
    TopologySpec,
    export_results,
    replicate_seeds,
    run_experiment,
)


def small_config(**overrides) -> ExperimentConfig:
    payload = {
        "topology": {"kind": "complete", "d": 8, "T": 6, "W": None, "p": None, "seed": None},
        "score_model": {"kind": "even_spread", "B": 1.0},
        "sweep": {"parameter": "B", "values": [0.5, 1.0, 2.0]},
        "replicates": 8,
        "t_value": 1.0,
        "base_seed": 42,
        "solver": "newton",
    }
    payload.update(overrides)
    return ExperimentConfig.from_dict(payload)


class TestConfigValidation:
    def test_json_round_trip(self, tmp_path):
        cfg = small_config()
        path = tmp_path / "config.json"
        path.write_text(json.dumps(cfg.to_dict()))
        assert ExperimentConfig.from_json(path) == cfg

    def test_rejects_bad_solver(self):
        with pytest.raises(ConfigError):
            small_config(solver="bfgs")

    def test_rejects_zero_replicates(self):
        with pytest.raises(ConfigError):
            small_config(replicates=0)

    def test_rejects_sweep_invalid_for_topology(self):
        with pytest.raises(ConfigError):
            small_config(sweep={"parameter": "W", "values": [2, 3]})  # not banded

    def test_rejects_odd_d_sweep_for_barbell(self):
        with pytest.raises(ConfigError):
            small_config(
                topology={"kind": "barbell", "d": 8, "T": 2, "W": None, "p": None, "seed": None},
                sweep={"parameter": "d", "values": [6, 7]},
            )

    def test_rejects_malformed_json(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json(path)


class TestSeedDerivation:
    def test_stable_and_distinct(self):
        a = replicate_seeds(1, "B", 0.5, 0)
        assert a == replicate_seeds(1, "B", 0.5, 0)
        assert a != replicate_seeds(1, "B", 0.5, 1)
        assert a != replicate_seeds(1, "B", 0.6, 0)
        assert a != replicate_seeds(2, "B", 0.5, 0)
        assert all(0 <= s < 2**63 for s in a)


class TestRunExperiment:
    def test_deterministic_across_runs_and_threads(self):
        cfg = small_config(replicates=6)
        r1 = run_experiment(cfg)
        r2 = run_experiment(cfg)
        r3 = run_experiment(cfg, threads=4)
        assert r1.to_dict() == r2.to_dict() == r3.to_dict()

    def test_ford_accounting_adds_up(self):
        # tiny T at a sizeable gap produces genuine Ford failures
        cfg = small_config(
            topology={"kind": "complete", "d": 5, "T": 1, "W": None, "p": None, "seed": None},
            sweep={"parameter": "B", "values": [3.0]},
            replicates=40,
        )
        result = run_experiment(cfg)
        cell = result.cells[0]
        failures = cell.aggregates["ford_failures"]
        assert failures > 0
        assert failures + cell.aggregates["fit_count"] == cfg.replicates
        for record in cell.records:
            if not record.ford_ok:
                assert record.l2_error is None

    def test_errors_shrink_with_more_comparisons(self):
        # at B = 0 the mean squared error must drop as T grows
        means = {}
        for T in (5, 500):
            cfg = small_config(
                topology={"kind": "complete", "d": 8, "T": T, "W": None, "p": None, "seed": None},
                score_model={"kind": "even_spread", "B": 0.0},
                sweep={"parameter": "B", "values": [0.0]},
                replicates=20,
            )
            means[T] = run_experiment(cfg).cells[0].aggregates["mean_l2"]
        assert means[500] < means[5]

    def test_gaussian_scores_redrawn_per_replicate(self):
        cfg = small_config(
            score_model={"kind": "gaussian_normalized", "B": 1.0},
            sweep={"parameter": "B", "values": [1.0]},
            replicates=5,
        )
        result = run_experiment(cfg)
        seeds = [rec.seed for rec in result.cells[0].records]
        assert len(set(seeds)) == len(seeds)

    def test_result_round_trip(self):
        result = run_experiment(small_config(replicates=3))
        clone = ExperimentResult.from_dict(
            json.loads(json.dumps(result.to_dict()))
        )
        assert clone.to_dict() == result.to_dict()

    def test_width_sweep_varies_comparison_totals(self):
        cfg = small_config(
            topology={"kind": "banded", "d": 20, "T": 2, "W": 3, "p": None, "seed": None},
            sweep={"parameter": "W", "values": [2, 5, 9]},
            replicates=3,
        )
        result = run_experiment(cfg)
        totals = [cell.n for cell in result.cells]
        assert totals == sorted(totals) and len(set(totals)) == 3

    def test_item_count_sweep(self):
        cfg = small_config(
            sweep={"parameter": "d", "values": [6, 10]},
            replicates=3,
        )
        result = run_experiment(cfg)
        assert [cell.bound_inputs["d"] for cell in result.cells] == [6, 10]


class TestExport:
    def test_csv_header_and_shape(self, tmp_path):
        result = run_experiment(small_config(replicates=3))
        csv_path, json_path = export_results(result, tmp_path)
        lines = csv_path.read_text().strip().split("\n")
        assert lines[0] == RESULTS_CSV_HEADER
        assert len(lines[0].split(",")) == 10
        assert len(lines) == 1 + len(result.cells)
        for line in lines[1:]:
            assert len(line.split(",")) == 10
        assert json_path.exists()

    def test_rerun_is_byte_identical(self, tmp_path):
        cfg = small_config(replicates=4)
        csv1, json1 = export_results(run_experiment(cfg), tmp_path / "a")
        csv2, json2 = export_results(run_experiment(cfg), tmp_path / "b")
        assert csv1.read_bytes() == csv2.read_bytes()
        assert json1.read_bytes() == json2.read_bytes()

    def test_json_reload_reproduces_aggregates(self, tmp_path):
        result = run_experiment(small_config(replicates=4))
        _, json_path = export_results(result, tmp_path)
        payload = json.loads(json_path.read_text())
        reloaded = ExperimentResult.from_dict(payload)
        for cell, orig in zip(reloaded.cells, result.cells):
            assert cell.aggregates == orig.aggregates

    def test_json_carries_config_version_and_seeds(self, tmp_path):
        result = run_experiment(small_config(replicates=2))
        _, json_path = export_results(result, tmp_path)
        payload = json.loads(json_path.read_text())
        assert payload["config"]["base_seed"] == 42
        assert payload["version"]
        for cell in payload["cells"]:
            assert all("seed" in rec for rec in cell["records"])

    def test_bound_reports_embedded(self, tmp_path):
        result = run_experiment(small_config(replicates=2))
        _, json_path = export_results(result, tmp_path)
        payload = json.loads(json_path.read_text())
        bounds = payload["cells"][0]["bounds"]
        assert bounds["ours"]["kind"] == "ours_l2"
        assert bounds["shah"]["kind"] == "shah_l2"
        assert set(bounds["ours"]["inputs"]) >= {"lambda2_fisher", "kappa", "B", "d", "n", "t"}
