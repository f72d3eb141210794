"""Maximum-likelihood score estimation and MLE-existence diagnostics.

The MLE of the model exists and is unique exactly when the win digraph
(edge from winner to loser for every observed win) is strongly connected;
this is checked before any solve, because iterating on a non-existent MLE
diverges silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import MleExistenceError, NumericalError
from .model import (
    ComparisonSchedule,
    OutcomeTable,
    ScoreVector,
    fisher_information,
    gradient,
    log_likelihood,
)
from .spectral import eigenvalues

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000
_MAX_HALVINGS = 50


@dataclass(frozen=True)
class FitResult:
    """Outcome of an MLE solve.

    ``existence`` is one of ``"exists"`` (converged or still iterable),
    ``"fails_ford"`` (no MLE; no estimate reported), or ``"max_iter"``.
    """

    estimate: ScoreVector | None
    converged: bool
    iterations: int
    final_gradient_norm: float
    existence: str
    solver: str
    tol: float

    @classmethod
    def ford_failure(cls, solver: str, tol: float) -> "FitResult":
        return cls(
            estimate=None,
            converged=False,
            iterations=0,
            final_gradient_norm=float("nan"),
            existence="fails_ford",
            solver=solver,
            tol=tol,
        )

    def to_dict(self) -> dict:
        grad_norm = self.final_gradient_norm
        return {
            "estimate": None if self.estimate is None else self.estimate.values.tolist(),
            "converged": self.converged,
            "iterations": self.iterations,
            "final_gradient_norm": None if math.isnan(grad_norm) else grad_norm,
            "existence": self.existence,
            "solver": self.solver,
            "tol": self.tol,
        }


def check_ford_condition(data: OutcomeTable) -> bool:
    """True iff every bipartition of the items has a win crossing it both ways.

    Equivalent formulation used here: the digraph with an edge from winner to
    loser for every pair with at least one win is strongly connected. One
    strongly-connected-components pass, O(d + edges).
    """
    i_e, j_e, n_e = data.schedule.edge_arrays
    a_e = data.wins_lower
    rows, cols = [], []
    won_lower = a_e > 0
    rows.append(i_e[won_lower])
    cols.append(j_e[won_lower])
    won_upper = a_e < n_e
    rows.append(j_e[won_upper])
    cols.append(i_e[won_upper])
    rows_arr = np.concatenate(rows)
    cols_arr = np.concatenate(cols)
    adj = csr_matrix(
        (np.ones(rows_arr.size, dtype=np.int8), (rows_arr, cols_arr)),
        shape=(data.d, data.d),
    )
    n_comp, _ = connected_components(adj, directed=True, connection="strong")
    return int(n_comp) == 1


def _recenter(w: np.ndarray) -> np.ndarray:
    return w - w.mean()


def _mm_sweep(
    pi: np.ndarray,
    i_e: np.ndarray,
    j_e: np.ndarray,
    n_e: np.ndarray,
    total_wins: np.ndarray,
) -> np.ndarray:
    """One minorize-maximize update on the strengths ``pi = exp(w)``.

    Classic fixed point for this model: ``pi_i <- W_i / sum_j n_ij/(pi_i+pi_j)``,
    followed by a geometric-mean renormalization so that ``log pi`` stays
    zero-sum. Never decreases the log-likelihood.
    """
    d = pi.size
    inv = n_e / (pi[i_e] + pi[j_e])
    denom = np.bincount(i_e, weights=inv, minlength=d) + np.bincount(
        j_e, weights=inv, minlength=d
    )
    pi_new = total_wins / denom
    log_pi = np.log(pi_new)
    return np.exp(_recenter(log_pi))


def fit_mle_mm(
    data: OutcomeTable,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> FitResult:
    """Fit by minorize-maximize fixed-point iteration in the strengths.

    Starts at equal strengths; converged when the sup norm of the
    log-likelihood gradient drops to ``tol``. Raises
    :class:`~btlrank.errors.MleExistenceError` when Ford's condition fails.
    """
    if not check_ford_condition(data):
        raise MleExistenceError(
            "MLE does not exist: some group of items is unbeaten by the rest"
        )
    d = data.d
    i_e, j_e, n_e = data.schedule.edge_arrays
    a_e = data.wins_lower
    total_wins = np.bincount(i_e, weights=a_e, minlength=d) + np.bincount(
        j_e, weights=(n_e - a_e).astype(np.float64), minlength=d
    )

    pi = np.ones(d)
    iterations = 0
    grad_norm = float(np.abs(gradient(ScoreVector(np.zeros(d)), data)).max())
    while grad_norm > tol and iterations < max_iter:
        pi = _mm_sweep(pi, i_e, j_e, n_e, total_wins)
        iterations += 1
        w = _recenter(np.log(pi))
        grad_norm = float(np.abs(gradient(ScoreVector(w), data)).max())
    w = _recenter(np.log(pi))
    converged = grad_norm <= tol
    return FitResult(
        estimate=ScoreVector(w),
        converged=converged,
        iterations=iterations,
        final_gradient_norm=grad_norm,
        existence="exists" if converged else "max_iter",
        solver="mm",
        tol=tol,
    )


def fit_mle_newton(
    data: OutcomeTable,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> FitResult:
    """Fit by damped Newton on the subspace orthogonal to the all-ones vector.

    The Hessian of the negative log-likelihood is the Fisher matrix at the
    current iterate; steps are halved (at most 50 times) until the likelihood
    does not decrease, since the loss is not globally strongly convex when the
    score range is unbounded.
    """
    if not check_ford_condition(data):
        raise MleExistenceError(
            "MLE does not exist: some group of items is unbeaten by the rest"
        )
    d = data.d
    w = np.zeros(d)
    iterations = 0
    ones = np.ones((d, d))
    while iterations < max_iter:
        scores = ScoreVector(w)
        g = gradient(scores, data)
        grad_norm = float(np.abs(g).max())
        if grad_norm <= tol:
            return FitResult(
                estimate=scores,
                converged=True,
                iterations=iterations,
                final_gradient_norm=grad_norm,
                existence="exists",
                solver="newton",
                tol=tol,
            )
        hess = fisher_information(scores, data.schedule).entries
        shift = float(np.trace(hess)) / d
        if shift <= 0.0:
            raise NumericalError("restricted Hessian is singular")
        try:
            step = scipy.linalg.solve(
                hess + (shift / d) * ones, g, assume_a="pos"
            )
        except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
            raise NumericalError(f"Newton system solve failed: {exc}") from exc
        ll_old = log_likelihood(scores, data)
        scale = 1.0
        w_new = _recenter(w + step)
        for _ in range(_MAX_HALVINGS):
            if log_likelihood(ScoreVector(w_new), data) >= ll_old:
                break
            scale *= 0.5
            w_new = _recenter(w + scale * step)
        w = w_new
        iterations += 1
    scores = ScoreVector(w)
    grad_norm = float(np.abs(gradient(scores, data)).max())
    return FitResult(
        estimate=scores,
        converged=False,
        iterations=iterations,
        final_gradient_norm=grad_norm,
        existence="max_iter",
        solver="newton",
        tol=tol,
    )


@dataclass(frozen=True)
class ExistencePrediction:
    """Design-time MLE-existence forecast for hypothesized scores.

    ``satisfied`` means ``lambda2_fisher >= 2 log d / n``; in that regime the
    probability that Ford's condition fails is at most ``2/sqrt(d)``
    (``failure_bound``; None when the condition is not met, i.e. no guarantee).
    """

    lambda2_fisher: float
    threshold: float
    satisfied: bool
    failure_bound: float | None

    def to_dict(self) -> dict:
        return {
            "lambda2_fisher": self.lambda2_fisher,
            "threshold": self.threshold,
            "satisfied": self.satisfied,
            "failure_bound": self.failure_bound,
        }


def predict_existence(
    w: ScoreVector, schedule: ComparisonSchedule
) -> ExistencePrediction:
    """Evaluate the spectral existence condition at hypothesized scores ``w``.

    This takes a hypothesized score vector, not data: it is a design-time
    tool, not a data-driven certificate.
    """
    lam2 = float(eigenvalues(fisher_information(w, schedule).entries)[1])
    threshold = 2.0 * math.log(schedule.d) / schedule.n
    satisfied = bool(lam2 >= threshold)
    bound = 2.0 / math.sqrt(schedule.d) if satisfied else None
    return ExistencePrediction(
        lambda2_fisher=lam2,
        threshold=float(threshold),
        satisfied=satisfied,
        failure_bound=bound,
    )
