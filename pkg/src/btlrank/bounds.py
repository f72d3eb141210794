"""Computable theoretical quantities: proxy function, error and existence bounds.

All universal constants from the underlying theory are set to 1 by
convention; on log-scale plots they are constant vertical shifts, and bound
curves are compared by growth rate after a one-point calibration. Every
report echoes its inputs and the convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

CONSTANT_CONVENTION = "universal constants set to 1"


def proxy_h(x: float) -> float:
    """Signed square-root proxy ``sgn(x) (sqrt(|x|+1) - 1)``.

    Odd and strictly increasing; quadratic near 0 and square-root at infinity,
    which is what restores strong convexity of the loss in proxy coordinates.
    Evaluated as ``x / (sqrt(|x|+1) + 1)`` to avoid cancellation near 0.
    """
    return x / (math.sqrt(abs(x) + 1.0) + 1.0)


def proxy_h_vec(v: np.ndarray) -> np.ndarray:
    """Elementwise :func:`proxy_h`."""
    v = np.asarray(v, dtype=np.float64)
    return v / (np.sqrt(np.abs(v) + 1.0) + 1.0)


def l2_bound_ours(
    lambda2_fisher: float, kappa: float, d: int, n: int, t: float
) -> float:
    """Fisher-information error bound ``kappa / lambda2_fisher * t * d / n``.

    Bounds the squared proxy error ``||h(estimate - truth)||^2`` with
    probability at least ``1 - e^-t - 1/d`` (constant set to 1). Linear in
    ``1/n``; on a banded graph with evenly spread scores it reduces to
    ``t d^3/(T W^3) e^(4BW/d)`` up to constants.
    """
    if lambda2_fisher <= 0.0:
        raise ValueError(f"lambda2_fisher must be > 0, got {lambda2_fisher}")
    if t <= 0.0:
        raise ValueError(f"tail parameter t must be > 0, got {t}")
    return kappa / lambda2_fisher * t * d / n


def shah_curvature_params(B: float) -> tuple[float, float]:
    """Curvature parameters (gamma, zeta) of the dynamic-range-based analysis.

    For this model ``gamma = 1/(e^-B + e^B)^2`` and ``zeta = 1``
    (Shah et al., 2016).
    """
    if B < 0:
        raise ValueError(f"dynamic range must be >= 0, got B={B}")
    return 1.0 / (math.exp(-B) + math.exp(B)) ** 2, 1.0


def l2_bound_shah(
    B: float, lambda2_laplacian: float, d: int, n: int, t: float
) -> float:
    """Dynamic-range error bound ``(e^-B + e^B)^4 / lambda2(L) * t * d / n``.

    The bounded-dynamic-range analysis of Shah et al. (2016) with its
    universal constant set to 1: ``zeta^2/gamma^2 = (e^-B + e^B)^4`` decouples
    the performance gaps from the graph, which enters only through the
    algebraic connectivity.
    """
    if lambda2_laplacian <= 0.0:
        raise ValueError(f"lambda2_laplacian must be > 0, got {lambda2_laplacian}")
    if t <= 0.0:
        raise ValueError(f"tail parameter t must be > 0, got {t}")
    gamma, zeta = shah_curvature_params(B)
    return (zeta / gamma) ** 2 / lambda2_laplacian * t * d / n


@dataclass(frozen=True)
class ExistenceBound:
    """Existence forecast: threshold check plus the failure-probability bounds.

    ``union_bound`` is the sharper intermediate expression
    ``2[(1 + e^(-3 n lambda2/4))^d - 1]`` evaluated at the actual eigenvalue;
    ``failure_prob_bound`` is the headline ``2/sqrt(d)`` (None when the
    threshold condition is not met).
    """

    satisfied: bool
    failure_prob_bound: float | None
    union_bound: float

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "failure_prob_bound": self.failure_prob_bound,
            "union_bound": self.union_bound,
        }


def existence_bound(lambda2_fisher: float, d: int, n: int) -> ExistenceBound:
    """Check ``lambda2_fisher >= 2 log d / n`` and report failure bounds."""
    threshold = 2.0 * math.log(d) / n
    satisfied = lambda2_fisher >= threshold
    # 2[(1+x)^d - 1] via expm1/log1p so tiny x does not underflow
    x = math.exp(-0.75 * n * lambda2_fisher)
    union = 2.0 * math.expm1(d * math.log1p(x))
    return ExistenceBound(
        satisfied=bool(satisfied),
        failure_prob_bound=2.0 / math.sqrt(d) if satisfied else None,
        union_bound=union,
    )


@dataclass(frozen=True)
class ConsistencyCondition:
    """The stronger spectral condition needed for the error-rate guarantee."""

    satisfied: bool
    threshold: float

    def to_dict(self) -> dict:
        return {"satisfied": self.satisfied, "threshold": self.threshold}


def consistency_condition(
    lambda2_fisher: float, v_max: int, d: int, n: int
) -> ConsistencyCondition:
    """Check ``lambda2_fisher >= sqrt(v_max log d)/n`` (constant set to 1).

    Strictly stronger than the existence threshold unless all non-null Fisher
    eigenvalues share an order of magnitude; the two checks are surfaced
    separately rather than reconciled.
    """
    threshold = math.sqrt(v_max * math.log(d)) / n
    return ConsistencyCondition(
        satisfied=bool(lambda2_fisher >= threshold), threshold=threshold
    )


@dataclass(frozen=True)
class FGValues:
    """Values of the curvature-comparison pair (f, g) at a point."""

    f: float
    g: float


def _log1pexp(z: float) -> float:
    # log(1 + e^z), stable for all z
    if z > 0:
        return z + math.log1p(math.exp(-z))
    return math.log1p(math.exp(z))


def _log_cosh(t: float) -> float:
    # |t| + log1p(e^{-2|t|}) - log 2 cancels catastrophically near 0
    a = abs(t)
    if a < 1e-3:
        return a * a / 2.0 - a**4 / 12.0
    return a + math.log1p(math.exp(-2.0 * a)) - math.log(2.0)


def lemma_functions_f_g(x: float, y: float) -> FGValues:
    """The scalar pair used to relate expected likelihood drop to the proxy.

    ``f(x, y) = (1+e^-x) log((1+e^(x+y))/(1+e^x)) + (1+e^x) log((1+e^(-x-y))/(1+e^-x))``
    and ``g(y) = log((1+e^y)/2) + log((1+e^-y)/2) = 2 log cosh(y/2)``.
    ``f(x, y) >= g(y)`` for all finite inputs, and ``g(y) >= h(y)^2``.
    """
    f = (1.0 + math.exp(-x)) * (_log1pexp(x + y) - _log1pexp(x)) + (
        1.0 + math.exp(x)
    ) * (_log1pexp(-x - y) - _log1pexp(-x))
    g = 2.0 * _log_cosh(y / 2.0)
    return FGValues(f=f, g=g)


def estimate_curvature_constant(grid: np.ndarray | None = None) -> float:
    """Smallest observed ratio ``g(y) / h(y)^2`` over a symmetric log grid.

    The theory only asserts the constant exists; this pins a concrete value
    (the ratio tends to 1 at both ends and stays above it in between).
    """
    if grid is None:
        grid = np.geomspace(1e-8, 1e4, 2000)
    grid = np.asarray(grid, dtype=np.float64)
    ratios = []
    for y in np.concatenate([-grid[::-1], grid]):
        g = lemma_functions_f_g(0.0, y).g
        ratios.append(g / proxy_h(y) ** 2)
    return float(min(ratios))


@dataclass(frozen=True)
class BoundReport:
    """A bound value plus everything needed to audit it."""

    kind: str
    value: float
    inputs: dict = field(default_factory=dict)
    constant_convention: str = CONSTANT_CONVENTION

    def __post_init__(self) -> None:
        if self.kind not in ("ours_l2", "shah_l2", "existence"):
            raise ValueError(f"unknown bound kind {self.kind!r}")
        if not (self.value >= 0.0):
            raise ValueError(f"bound value must be >= 0, got {self.value}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "inputs": dict(self.inputs),
            "constant_convention": self.constant_convention,
        }
