"""Comparison-schedule generators and score-vector generators.

Topologies: complete, Erdos-Renyi(p), banded(W), star, and barbell, each with
T comparisons per included pair. Score generators: evenly spread over the
dynamic range, or a sup-norm-normalized Gaussian draw.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GenerationError
from .model import ComparisonSchedule, ScoreVector, _union_find_connected

TOPOLOGY_KINDS = ("complete", "erdos_renyi", "banded", "star", "barbell")

_ER_MAX_RETRIES = 100


@dataclass(frozen=True)
class TopologySpec:
    """Declarative description of a comparison-schedule topology.

    ``W`` is the band width (banded only), ``p`` the edge probability
    (erdos_renyi only), and ``seed`` drives the random draw (erdos_renyi only).
    """

    kind: str
    d: int
    T: int
    W: int | None = None
    p: float | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in TOPOLOGY_KINDS:
            raise ValueError(f"unknown topology kind {self.kind!r}")
        if self.d < 2:
            raise ValueError(f"need at least 2 items, got d={self.d}")
        if self.T < 1:
            raise ValueError(f"comparisons per pair must be >= 1, got T={self.T}")
        if self.kind == "banded":
            if self.W is None or not (1 <= self.W <= self.d - 1):
                raise ValueError(
                    f"banded width must be in [1, {self.d - 1}], got W={self.W}"
                )
        if self.kind == "erdos_renyi":
            if self.p is None or not (0.0 < self.p <= 1.0):
                raise ValueError(f"edge probability must be in (0, 1], got p={self.p}")
            if self.seed is None:
                raise ValueError("erdos_renyi requires a seed")
        if self.kind == "barbell" and self.d % 2 != 0:
            raise ValueError(f"barbell requires even d, got d={self.d}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "T": self.T,
            "W": self.W,
            "p": self.p,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "TopologySpec":
        return cls(
            kind=payload["kind"],
            d=int(payload["d"]),
            T=int(payload["T"]),
            W=None if payload.get("W") is None else int(payload["W"]),
            p=None if payload.get("p") is None else float(payload["p"]),
            seed=None if payload.get("seed") is None else int(payload["seed"]),
        )


def banded_edge_count(d: int, width: int) -> int:
    """Number of pairs with 0 < |i - j| <= width on d items."""
    return d * width - width * (width + 1) // 2


def _pairs_complete(d: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def _pairs_banded(d: int, width: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i + 1, min(i + width, d - 1) + 1)]


def _pairs_star(d: int) -> list[tuple[int, int]]:
    return [(0, j) for j in range(1, d)]


def _pairs_barbell(d: int) -> list[tuple[int, int]]:
    half = d // 2
    pairs = [(i, j) for i in range(half) for j in range(i + 1, half)]
    pairs += [(i, j) for i in range(half, d) for j in range(i + 1, d)]
    # single bridge joining the two complete halves
    pairs.append((half - 1, half))
    return pairs


def generate_schedule(spec: TopologySpec) -> ComparisonSchedule:
    """Materialize a schedule from a topology spec.

    Erdos-Renyi draws are rejected and resampled until connected (at most 100
    retries), which preserves the graph distribution conditioned on
    connectivity.
    """
    if spec.kind == "complete":
        pairs = _pairs_complete(spec.d)
    elif spec.kind == "banded":
        pairs = _pairs_banded(spec.d, spec.W)
    elif spec.kind == "star":
        pairs = _pairs_star(spec.d)
    elif spec.kind == "barbell":
        pairs = _pairs_barbell(spec.d)
    else:
        pairs = _erdos_renyi_pairs(spec)
    return ComparisonSchedule(spec.d, {pair: spec.T for pair in pairs})


def _erdos_renyi_pairs(spec: TopologySpec) -> list[tuple[int, int]]:
    all_pairs = _pairs_complete(spec.d)
    rng = np.random.default_rng(spec.seed)
    for _ in range(_ER_MAX_RETRIES):
        mask = rng.random(len(all_pairs)) < spec.p
        pairs = [pair for pair, keep in zip(all_pairs, mask) if keep]
        if pairs and _union_find_connected(spec.d, pairs):
            return pairs
    raise GenerationError(
        f"no connected Erdos-Renyi draw in {_ER_MAX_RETRIES} tries "
        f"(d={spec.d}, p={spec.p})"
    )


def even_spread_scores(d: int, B: float) -> ScoreVector:
    """Scores evenly spaced across the dynamic range, re-centered to zero sum.

    The raw ladder ``w_i = (2i - d)/d * B`` (1-based ``i``) sums to ``B``, not
    zero, so the mean is subtracted; pairwise gaps, and hence all winning
    probabilities, are unchanged. The extreme gap is ``2B(d-1)/d``.
    """
    if d < 2:
        raise ValueError(f"need at least 2 items, got d={d}")
    if B < 0:
        raise ValueError(f"dynamic range must be >= 0, got B={B}")
    i = np.arange(1, d + 1)
    raw = (2.0 * i - d) / d * B
    return ScoreVector.centered(raw)


def _gaussian_raw(d: int, B: float, seed: int) -> np.ndarray:
    """Gaussian draw scaled so its sup norm is exactly B (before centering)."""
    rng = np.random.default_rng(seed)
    draw = rng.standard_normal(d)
    # normalize before scaling so the argmax entry lands on exactly +-B
    return draw / np.abs(draw).max() * B


def gaussian_normalized_scores(d: int, B: float, seed: int) -> ScoreVector:
    """Sup-norm-normalized standard Gaussian scores, re-centered to zero sum."""
    if d < 2:
        raise ValueError(f"need at least 2 items, got d={d}")
    if B <= 0:
        raise ValueError(f"dynamic range must be > 0, got B={B}")
    return ScoreVector.centered(_gaussian_raw(d, B, seed))
