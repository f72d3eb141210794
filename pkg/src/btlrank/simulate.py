"""Declarative Monte-Carlo experiments over comparison-graph sweeps.

A config names a topology, a score model, one swept parameter (B, W, or d),
a replicate count, and a base seed. Each (sweep value, replicate) cell gets a
seed derived by XORing the base seed with a stable hash of the cell key, so
runs are reproducible and order-independent. Replicates that fail Ford's
condition are counted separately and excluded from error aggregates.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import l2_bound_ours, l2_bound_shah, proxy_h_vec
from .errors import ConfigError
from .estimation import check_ford_condition, fit_mle_mm, fit_mle_newton
from .graphs import (
    TopologySpec,
    even_spread_scores,
    gaussian_normalized_scores,
    generate_schedule,
)
from .model import ScoreVector, fisher_information, sample_outcomes
from .spectral import eigenvalues, kappa

SCORE_MODELS = ("even_spread", "gaussian_normalized")
SWEEP_PARAMETERS = ("B", "W", "d")
SOLVERS = ("mm", "newton")

RESULTS_CSV_HEADER = (
    "sweep_value,n,mean_l2,ci_low,ci_high,p95_l2,mean_proxy,"
    "bound_ours,bound_shah,ford_failures"
)

_SEED_MASK = (1 << 63) - 1


@dataclass(frozen=True)
class ScoreModel:
    """Score generator choice: ``even_spread(B)`` or ``gaussian_normalized(B)``."""

    kind: str
    B: float

    def __post_init__(self) -> None:
        if self.kind not in SCORE_MODELS:
            raise ConfigError(f"unknown score model {self.kind!r}")
        if self.B < 0:
            raise ConfigError(f"dynamic range must be >= 0, got B={self.B}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "B": self.B}


@dataclass(frozen=True)
class SweepSpec:
    """Which parameter is swept and over which values."""

    parameter: str
    values: tuple

    def __post_init__(self) -> None:
        if self.parameter not in SWEEP_PARAMETERS:
            raise ConfigError(f"sweep parameter must be one of {SWEEP_PARAMETERS}")
        if len(self.values) < 1:
            raise ConfigError("sweep needs at least one value")
        object.__setattr__(self, "values", tuple(self.values))

    def to_dict(self) -> dict:
        return {"parameter": self.parameter, "values": list(self.values)}


@dataclass(frozen=True)
class ExperimentConfig:
    """Full declarative description of one Monte-Carlo experiment."""

    topology: TopologySpec
    score_model: ScoreModel
    sweep: SweepSpec
    replicates: int
    t_value: float
    base_seed: int
    solver: str

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ConfigError(f"replicates must be >= 1, got {self.replicates}")
        if self.t_value <= 0:
            raise ConfigError(f"t_value must be > 0, got {self.t_value}")
        if self.solver not in SOLVERS:
            raise ConfigError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        # every sweep value must yield a valid topology/score model
        for value in self.sweep.values:
            self.resolve(value)

    def resolve(self, value) -> tuple[TopologySpec, ScoreModel]:
        """Topology and score model with the sweep value substituted in."""
        topo, scores = self.topology, self.score_model
        try:
            if self.sweep.parameter == "B":
                scores = ScoreModel(kind=scores.kind, B=float(value))
            elif self.sweep.parameter == "W":
                if topo.kind != "banded":
                    raise ConfigError(
                        f"a W sweep needs a banded topology, got {topo.kind!r}"
                    )
                topo = TopologySpec(
                    kind=topo.kind, d=topo.d, T=topo.T, W=int(value),
                    p=topo.p, seed=topo.seed,
                )
            else:
                topo = TopologySpec(
                    kind=topo.kind, d=int(value), T=topo.T, W=topo.W,
                    p=topo.p, seed=topo.seed,
                )
        except ValueError as exc:
            raise ConfigError(
                f"sweep value {value!r} invalid for {self.sweep.parameter}: {exc}"
            ) from exc
        return topo, scores

    def to_dict(self) -> dict:
        return {
            "topology": self.topology.to_dict(),
            "score_model": self.score_model.to_dict(),
            "sweep": self.sweep.to_dict(),
            "replicates": self.replicates,
            "t_value": self.t_value,
            "base_seed": self.base_seed,
            "solver": self.solver,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentConfig":
        try:
            return cls(
                topology=TopologySpec.from_dict(payload["topology"]),
                score_model=ScoreModel(
                    kind=payload["score_model"]["kind"],
                    B=float(payload["score_model"]["B"]),
                ),
                sweep=SweepSpec(
                    parameter=payload["sweep"]["parameter"],
                    values=tuple(payload["sweep"]["values"]),
                ),
                replicates=int(payload["replicates"]),
                t_value=float(payload["t_value"]),
                base_seed=int(payload["base_seed"]),
                solver=payload["solver"],
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"malformed experiment config: {exc}") from exc

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as handle:
            try:
                payload = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from exc
        return cls.from_dict(payload)


def replicate_seeds(base_seed: int, parameter: str, value, r: int) -> tuple[int, int]:
    """Derived (outcome, score) seeds for one replicate cell.

    Stable across runs and platforms: base_seed XOR sha256 of the cell key.
    """
    digest = hashlib.sha256(f"{parameter}={value!r}|rep={r}".encode()).digest()
    outcome_seed = (base_seed ^ int.from_bytes(digest[:8], "big")) & _SEED_MASK
    score_seed = (base_seed ^ int.from_bytes(digest[8:16], "big")) & _SEED_MASK
    return outcome_seed, score_seed


@dataclass(frozen=True)
class ReplicateRecord:
    """Per-replicate outcome: seed, Ford status, and error measurements."""

    seed: int
    ford_ok: bool
    converged: bool
    iterations: int
    l2_error: float | None
    proxy_error: float | None

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "ford_ok": self.ford_ok,
            "converged": self.converged,
            "iterations": self.iterations,
            "l2_error": self.l2_error,
            "proxy_error": self.proxy_error,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ReplicateRecord":
        return cls(
            seed=int(payload["seed"]),
            ford_ok=bool(payload["ford_ok"]),
            converged=bool(payload["converged"]),
            iterations=int(payload["iterations"]),
            l2_error=payload["l2_error"],
            proxy_error=payload["proxy_error"],
        )


@dataclass(frozen=True)
class CellResult:
    """One sweep value: per-replicate records, aggregates, and bound values."""

    sweep_value: object
    n: int
    records: tuple[ReplicateRecord, ...]
    aggregates: dict
    bound_ours: float
    bound_shah: float
    bound_inputs: dict

    def to_dict(self) -> dict:
        return {
            "sweep_value": self.sweep_value,
            "n": self.n,
            "records": [rec.to_dict() for rec in self.records],
            "aggregates": dict(self.aggregates),
            "bounds": {
                "ours": {
                    "kind": "ours_l2",
                    "value": self.bound_ours,
                    "inputs": dict(self.bound_inputs),
                    "constant_convention": "universal constants set to 1",
                },
                "shah": {
                    "kind": "shah_l2",
                    "value": self.bound_shah,
                    "inputs": dict(self.bound_inputs),
                    "constant_convention": "universal constants set to 1",
                },
            },
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "CellResult":
        return cls(
            sweep_value=payload["sweep_value"],
            n=int(payload["n"]),
            records=tuple(
                ReplicateRecord.from_dict(rec) for rec in payload["records"]
            ),
            aggregates=dict(payload["aggregates"]),
            bound_ours=float(payload["bounds"]["ours"]["value"]),
            bound_shah=float(payload["bounds"]["shah"]["value"]),
            bound_inputs=dict(payload["bounds"]["ours"]["inputs"]),
        )


@dataclass(frozen=True)
class ExperimentResult:
    """All cells of one experiment plus the config echo and code version."""

    config: ExperimentConfig
    cells: tuple[CellResult, ...]
    version: str

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "version": self.version,
            "cells": [cell.to_dict() for cell in self.cells],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentResult":
        return cls(
            config=ExperimentConfig.from_dict(payload["config"]),
            cells=tuple(CellResult.from_dict(cell) for cell in payload["cells"]),
            version=payload["version"],
        )


def _aggregate(records: tuple[ReplicateRecord, ...]) -> dict:
    l2 = np.array([r.l2_error for r in records if r.ford_ok], dtype=np.float64)
    proxy = np.array([r.proxy_error for r in records if r.ford_ok], dtype=np.float64)
    failures = sum(1 for r in records if not r.ford_ok)
    if l2.size == 0:
        mean = ci_low = ci_high = p95 = mean_proxy = float("nan")
    else:
        mean = float(l2.mean())
        if l2.size == 1:
            ci_low = ci_high = mean
        else:
            half = 1.96 * float(l2.std(ddof=1)) / math.sqrt(l2.size)
            ci_low, ci_high = mean - half, mean + half
        p95 = float(np.percentile(l2, 95))
        mean_proxy = float(proxy.mean())
    return {
        "mean_l2": mean,
        "ci_low": ci_low,
        "ci_high": ci_high,
        "p95_l2": p95,
        "mean_proxy": mean_proxy,
        "ford_failures": failures,
        "fit_count": len(records) - failures,
    }


def _cell_scores(model: ScoreModel, d: int, score_seed: int) -> ScoreVector:
    if model.kind == "even_spread":
        return even_spread_scores(d, model.B)
    return gaussian_normalized_scores(d, model.B, score_seed)


def _run_replicate(
    config: ExperimentConfig,
    schedule,
    model: ScoreModel,
    value,
    r: int,
) -> ReplicateRecord:
    outcome_seed, score_seed = replicate_seeds(
        config.base_seed, config.sweep.parameter, value, r
    )
    w_star = _cell_scores(model, schedule.d, score_seed)
    outcomes = sample_outcomes(w_star, schedule, outcome_seed)
    if not check_ford_condition(outcomes):
        return ReplicateRecord(
            seed=outcome_seed,
            ford_ok=False,
            converged=False,
            iterations=0,
            l2_error=None,
            proxy_error=None,
        )
    fit = fit_mle_mm(outcomes) if config.solver == "mm" else fit_mle_newton(outcomes)
    delta = fit.estimate.values - w_star.values
    return ReplicateRecord(
        seed=outcome_seed,
        ford_ok=True,
        converged=fit.converged,
        iterations=fit.iterations,
        l2_error=float(np.sum(delta**2)),
        proxy_error=float(np.sum(proxy_h_vec(delta) ** 2)),
    )


def _run_cell(config: ExperimentConfig, value, threads: int) -> CellResult:
    topo, model = config.resolve(value)
    schedule = generate_schedule(topo)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = tuple(
                pool.map(
                    lambda r: _run_replicate(config, schedule, model, value, r),
                    range(config.replicates),
                )
            )
    else:
        records = tuple(
            _run_replicate(config, schedule, model, value, r)
            for r in range(config.replicates)
        )

    # Bound curves at the true scores; gaussian models redraw w* per
    # replicate, so the replicate-0 draw pins the curve deterministically.
    _, score_seed0 = replicate_seeds(config.base_seed, config.sweep.parameter, value, 0)
    w_star = _cell_scores(model, schedule.d, score_seed0)
    fisher = fisher_information(w_star, schedule)
    lam2_fisher = float(eigenvalues(fisher.entries)[1])
    lam2_laplacian = float(eigenvalues(schedule.laplacian)[1])
    kap = kappa(schedule, fisher)
    n = schedule.n
    inputs = {
        "lambda2_fisher": lam2_fisher,
        "lambda2_laplacian": lam2_laplacian,
        "kappa": kap,
        "B": model.B,
        "d": schedule.d,
        "n": n,
        "t": config.t_value,
    }
    return CellResult(
        sweep_value=value,
        n=n,
        records=records,
        aggregates=_aggregate(records),
        bound_ours=l2_bound_ours(lam2_fisher, kap, schedule.d, n, config.t_value),
        bound_shah=l2_bound_shah(model.B, lam2_laplacian, schedule.d, n, config.t_value),
        bound_inputs=inputs,
    )


def run_experiment(config: ExperimentConfig, threads: int = 1) -> ExperimentResult:
    """Run every (sweep value, replicate) cell and aggregate.

    Deterministic for a fixed config regardless of ``threads``; replicate
    records are kept in replicate order before aggregation.
    """
    from btlrank import __version__

    cells = tuple(
        _run_cell(config, value, threads) for value in config.sweep.values
    )
    return ExperimentResult(config=config, cells=cells, version=__version__)


def _fmt(x: float) -> str:
    return repr(float(x))


def export_results(result: ExperimentResult, out_dir: str | Path) -> tuple[Path, Path]:
    """Write ``results.csv`` (one row per sweep value) and ``results.json``.

    Bit-stable given the same config and build: floats are written with
    shortest round-trip repr and the JSON layout is fixed.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "results.csv"
    json_path = out / "results.json"

    lines = [RESULTS_CSV_HEADER]
    for cell in result.cells:
        agg = cell.aggregates
        lines.append(
            ",".join(
                [
                    repr(cell.sweep_value),
                    str(cell.n),
                    _fmt(agg["mean_l2"]),
                    _fmt(agg["ci_low"]),
                    _fmt(agg["ci_high"]),
                    _fmt(agg["p95_l2"]),
                    _fmt(agg["mean_proxy"]),
                    _fmt(cell.bound_ours),
                    _fmt(cell.bound_shah),
                    str(agg["ford_failures"]),
                ]
            )
        )
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    json_path.write_text(
        json.dumps(result.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
    return csv_path, json_path
