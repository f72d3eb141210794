"""Dense symmetric eigen-analysis for Laplacian and Fisher matrices.

Everything here assumes desk-scale dense matrices (d up to a couple of
thousand); no sparse or iterative solvers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, SupportMismatchError
from .model import ComparisonSchedule, FisherMatrix, ScoreVector, fisher_information

#: Relative eigenvalue threshold below which a direction is treated as null
#: when pseudo-inverting. Connected schedules have exactly one null direction;
#: the threshold only guards round-off.
NULL_SPACE_RTOL = 1e-12

_SYMMETRY_ATOL = 1e-10


def _require_symmetric(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if np.abs(m - m.T).max() > _SYMMETRY_ATOL:
        raise ValueError("matrix must be symmetric (tolerance 1e-10)")
    return m


def eigenvalues(m: np.ndarray) -> np.ndarray:
    """Full spectrum of a symmetric matrix, ascending."""
    m = _require_symmetric(m)
    try:
        return np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hardware dependent
        raise NumericalError(
            f"eigensolver failed on a {m.shape[0]}x{m.shape[0]} matrix: {exc}"
        ) from exc


def algebraic_connectivity(m: np.ndarray) -> float:
    """Second-smallest eigenvalue of a Laplacian-type matrix.

    The input must annihilate the all-ones vector; zero iff the underlying
    graph is disconnected.
    """
    m = _require_symmetric(m)
    scale = max(1.0, float(np.abs(m).max()))
    if np.abs(m @ np.ones(m.shape[0])).max() > 1e-8 * scale:
        raise ValueError("matrix does not annihilate the all-ones vector")
    return float(eigenvalues(m)[1])


def _eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hardware dependent
        raise NumericalError(
            f"eigensolver failed on a {m.shape[0]}x{m.shape[0]} matrix: {exc}"
        ) from exc


def pseudo_inverse_psd(m: np.ndarray) -> np.ndarray:
    """Moore-Penrose pseudo-inverse of a symmetric PSD matrix.

    Eigenvalues below ``NULL_SPACE_RTOL * lambda_max`` are treated as exact
    zeros rather than inverted.
    """
    m = _require_symmetric(m)
    evals, vecs = _eigh(m)
    cutoff = NULL_SPACE_RTOL * max(float(evals.max()), 0.0)
    inv = np.where(evals > cutoff, 1.0 / np.where(evals > cutoff, evals, 1.0), 0.0)
    return (vecs * inv) @ vecs.T


def kappa(schedule: ComparisonSchedule, fisher: FisherMatrix) -> float:
    """Largest eigenvalue of ``L^(1/2) F^+ L^(1/2)``.

    Joint measure of graph topology and compared-pair performance gaps: equals
    4 when all scores are equal (F = L/4) and grows as compared pairs become
    lopsided. Square root and pseudo-inverse are taken on the subspace
    orthogonal to the all-ones vector; the schedule and the Fisher matrix must
    share the same edge support for that convention to be meaningful.
    """
    if fisher.d != schedule.d:
        raise SupportMismatchError(
            f"dimension mismatch: schedule d={schedule.d}, Fisher d={fisher.d}"
        )
    i_e, j_e, _ = schedule.edge_arrays
    off = fisher.entries[i_e, j_e]
    if np.any(off == 0.0):
        raise SupportMismatchError(
            "Fisher matrix vanishes on a compared pair (edge supports differ)"
        )
    mask = np.ones((schedule.d, schedule.d), dtype=bool)
    mask[i_e, j_e] = False
    mask[j_e, i_e] = False
    np.fill_diagonal(mask, False)
    if np.any(fisher.entries[mask] != 0.0):
        raise SupportMismatchError(
            "Fisher matrix has weight on a non-compared pair (edge supports differ)"
        )

    L = schedule.laplacian
    evals, vecs = _eigh(L)
    sqrt_l = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.T
    conjugated = sqrt_l @ pseudo_inverse_psd(fisher.entries) @ sqrt_l
    top = eigenvalues(0.5 * (conjugated + conjugated.T))[-1]
    return float(top)


def circulant_cayley_spectrum(d: int, width: int) -> np.ndarray:
    """Analytic spectrum of the normalized circulant band Laplacian.

    The graph joins residues of Z_d at circular distance 1..width (one edge
    per element of the difference set, so distances past d/2 double up), with
    total weight ``d * width``. Eigenvalue ``k`` is
    ``(2/(d*width)) * sum_{i=1..width} (1 - cos(2*pi*i*k/d))``, returned in
    ``k`` order (``k = 0`` gives 0 for the constant eigenvector).
    """
    if d < 2:
        raise ValueError(f"need at least 2 items, got d={d}")
    if not (1 <= width <= d - 1):
        raise ValueError(f"width must be in [1, {d - 1}], got {width}")
    k = np.arange(d)
    i = np.arange(1, width + 1)
    angles = 2.0 * np.pi * np.outer(i, k) / d
    return (2.0 / (d * width)) * (1.0 - np.cos(angles)).sum(axis=0)


@dataclass(frozen=True)
class SpectralSummary:
    """Headline spectral quantities for a schedule (and optionally scores).

    ``kappa`` is None ("undefined") when no scores are supplied.
    """

    lambda2: float
    lambda_max: float
    kappa: float | None

    def to_dict(self) -> dict:
        return {
            "lambda2": self.lambda2,
            "lambda_max": self.lambda_max,
            "kappa": self.kappa,
        }


def spectral_summary(
    schedule: ComparisonSchedule, scores: ScoreVector | None = None
) -> SpectralSummary:
    """Summarize the schedule's Laplacian spectrum, plus kappa if scores are given."""
    evals = eigenvalues(schedule.laplacian)
    kap = None
    if scores is not None:
        kap = kappa(schedule, fisher_information(scores, schedule))
    return SpectralSummary(
        lambda2=float(evals[1]), lambda_max=float(evals[-1]), kappa=kap
    )
