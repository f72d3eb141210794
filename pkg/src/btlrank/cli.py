"""Batch command-line interface.

Subcommands: generate, fit, check-existence, spectral, bounds, simulate.
Exit codes: 0 ok, 2 usage or parse error, 3 MLE nonexistence, 4
non-convergence, 5 I/O failure. All randomness is seeded via flags, so every
invocation is deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io as btlio
from .bounds import (
    BoundReport,
    consistency_condition,
    existence_bound,
    l2_bound_ours,
    l2_bound_shah,
)
from .errors import (
    ConfigError,
    CsvFormatError,
    GenerationError,
    MleExistenceError,
)
from .estimation import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    FitResult,
    check_ford_condition,
    fit_mle_mm,
    fit_mle_newton,
    predict_existence,
)
from .graphs import (
    TopologySpec,
    even_spread_scores,
    gaussian_normalized_scores,
    generate_schedule,
)
from .model import fisher_information, sample_outcomes
from .simulate import ExperimentConfig, export_results, run_experiment
from .spectral import eigenvalues, kappa, spectral_summary

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_MLE = 3
EXIT_NO_CONVERGENCE = 4
EXIT_IO = 5

THREADS_ENV_VAR = "BTLRANK_THREADS"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="btlrank",
        description="Pairwise-comparison ranking: schedules, MLE fits, "
        "spectral diagnostics, error bounds, and Monte-Carlo sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a comparison schedule (and scores)")
    gen.add_argument("--kind", required=True,
                     choices=["complete", "erdos-renyi", "banded", "star", "barbell"])
    gen.add_argument("--d", type=int, required=True, help="number of items")
    gen.add_argument("--T", type=int, required=True, help="comparisons per pair")
    gen.add_argument("--W", type=int, help="band width (banded only)")
    gen.add_argument("--p", type=float, help="edge probability (erdos-renyi only)")
    gen.add_argument("--seed", type=int, help="graph seed (erdos-renyi only)")
    gen.add_argument("--out", required=True, help="schedule CSV path")
    gen.add_argument("--scores", metavar="SPEC",
                     help="also write scores: 'even:B' or 'gaussian:B:seed'")
    gen.add_argument("--scores-out", help="scores CSV path (with --scores)")
    gen.add_argument("--sample-seed", type=int,
                     help="also sample outcomes with this seed (needs --scores)")
    gen.add_argument("--outcomes-out", help="outcomes CSV path (with --sample-seed)")

    fit = sub.add_parser("fit", help="fit the MLE from an outcomes CSV")
    fit.add_argument("outcomes", help="outcomes CSV path")
    fit.add_argument("--solver", choices=["mm", "newton"], default="mm")
    fit.add_argument("--tol", type=float, default=DEFAULT_TOL)
    fit.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)

    chk = sub.add_parser("check-existence", help="MLE-existence diagnostics")
    chk.add_argument("--outcomes", help="outcomes CSV: check Ford's condition on data")
    chk.add_argument("--schedule", help="schedule CSV (with --scores): spectral forecast")
    chk.add_argument("--scores", help="hypothesized scores CSV")

    spec = sub.add_parser("spectral", help="Laplacian/Fisher spectral summary")
    spec.add_argument("--schedule", required=True, help="schedule CSV path")
    spec.add_argument("--scores", help="scores CSV (enables kappa)")

    bnd = sub.add_parser("bounds", help="print both error-bound families")
    bnd.add_argument("--schedule", required=True, help="schedule CSV path")
    bnd.add_argument("--scores", required=True, help="true/hypothesized scores CSV")
    bnd.add_argument("--t", type=float, default=1.0, help="tail parameter")

    sim = sub.add_parser("simulate", help="run a Monte-Carlo experiment config")
    sim.add_argument("config", help="experiment config JSON path")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--threads", type=int, default=None,
                     help=f"replicate-level parallelism (default ${THREADS_ENV_VAR} or 1)")
    sim.add_argument("--dry-run", action="store_true",
                     help="validate the config and exit without running")
    return parser


def _parse_scores_spec(text: str, d: int):
    parts = text.split(":")
    try:
        if parts[0] == "even" and len(parts) == 2:
            return even_spread_scores(d, float(parts[1]))
        if parts[0] == "gaussian" and len(parts) == 3:
            return gaussian_normalized_scores(d, float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ValueError(f"bad --scores spec {text!r}: {exc}") from exc
    raise ValueError(f"bad --scores spec {text!r}: use 'even:B' or 'gaussian:B:seed'")


def _cmd_generate(args) -> int:
    kind = args.kind.replace("-", "_")
    spec = TopologySpec(kind=kind, d=args.d, T=args.T, W=args.W, p=args.p,
                        seed=args.seed)
    schedule = generate_schedule(spec)
    btlio.write_schedule_csv(schedule, args.out)
    print(f"wrote {args.out}: d={schedule.d}, edges={schedule.n_edges}, n={schedule.n}")

    scores = None
    if args.scores:
        if not args.scores_out:
            raise ValueError("--scores requires --scores-out")
        scores = _parse_scores_spec(args.scores, args.d)
        btlio.write_scores_csv(scores, args.scores_out)
        print(f"wrote {args.scores_out}")
    if args.sample_seed is not None:
        if scores is None or not args.outcomes_out:
            raise ValueError("--sample-seed requires --scores and --outcomes-out")
        table = sample_outcomes(scores, schedule, args.sample_seed)
        btlio.write_outcomes_csv(table, args.outcomes_out)
        print(f"wrote {args.outcomes_out}")
    return EXIT_OK


def _cmd_fit(args) -> int:
    data = btlio.read_outcomes_csv(args.outcomes)
    solver = fit_mle_mm if args.solver == "mm" else fit_mle_newton
    try:
        result = solver(data, tol=args.tol, max_iter=args.max_iter)
    except MleExistenceError as exc:
        print(json.dumps(FitResult.ford_failure(args.solver, args.tol).to_dict()))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_MLE
    print(json.dumps(result.to_dict()))
    return EXIT_OK if result.converged else EXIT_NO_CONVERGENCE


def _cmd_check_existence(args) -> int:
    if args.outcomes:
        data = btlio.read_outcomes_csv(args.outcomes)
        print(json.dumps({"ford_condition": check_ford_condition(data)}))
        return EXIT_OK
    if args.schedule and args.scores:
        schedule = btlio.read_schedule_csv(args.schedule)
        scores = btlio.read_scores_csv(args.scores)
        print(json.dumps(predict_existence(scores, schedule).to_dict()))
        return EXIT_OK
    raise ValueError("check-existence needs --outcomes, or --schedule with --scores")


def _cmd_spectral(args) -> int:
    schedule = btlio.read_schedule_csv(args.schedule)
    scores = btlio.read_scores_csv(args.scores) if args.scores else None
    print(json.dumps(spectral_summary(schedule, scores).to_dict()))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    schedule = btlio.read_schedule_csv(args.schedule)
    scores = btlio.read_scores_csv(args.scores)
    fisher = fisher_information(scores, schedule)
    lam2_fisher = float(eigenvalues(fisher.entries)[1])
    lam2_laplacian = float(eigenvalues(schedule.laplacian)[1])
    kap = kappa(schedule, fisher)
    B = scores.sup_norm
    d, n, t = schedule.d, schedule.n, args.t
    inputs = {
        "lambda2_fisher": lam2_fisher,
        "lambda2_laplacian": lam2_laplacian,
        "kappa": kap,
        "B": B,
        "d": d,
        "n": n,
        "t": t,
    }
    ours = BoundReport("ours_l2", l2_bound_ours(lam2_fisher, kap, d, n, t), inputs)
    shah = BoundReport("shah_l2", l2_bound_shah(B, lam2_laplacian, d, n, t), inputs)
    payload = {
        "ours": ours.to_dict(),
        "shah": shah.to_dict(),
        "existence": existence_bound(lam2_fisher, d, n).to_dict(),
        "consistency": consistency_condition(lam2_fisher, schedule.v_max, d, n).to_dict(),
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = ExperimentConfig.from_json(args.config)
    if args.dry_run:
        print(f"config ok: {len(config.sweep.values)} sweep values x "
              f"{config.replicates} replicates, solver={config.solver}")
        return EXIT_OK
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV_VAR, "1"))
    result = run_experiment(config, threads=max(1, threads))
    csv_path, json_path = export_results(result, args.out)
    print(f"wrote {csv_path} and {json_path}")
    print("sweep_value  n  mean_l2  ci95  p95_l2  ford_failures")
    for cell in result.cells:
        agg = cell.aggregates
        print(
            f"{cell.sweep_value}  {cell.n}  {agg['mean_l2']:.6g}  "
            f"[{agg['ci_low']:.6g}, {agg['ci_high']:.6g}]  "
            f"{agg['p95_l2']:.6g}  {agg['ford_failures']}"
        )
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "fit": _cmd_fit,
    "check-existence": _cmd_check_existence,
    "spectral": _cmd_spectral,
    "bounds": _cmd_bounds,
    "simulate": _cmd_simulate,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (CsvFormatError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
