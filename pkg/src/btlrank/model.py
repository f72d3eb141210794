"""Core Bradley-Terry-Luce model: data structures, likelihood, Fisher information.

Items carry latent scores ``w`` (zero-sum for identifiability) and item ``i``
beats item ``j`` with probability ``exp(w_i) / (exp(w_i) + exp(w_j))``.
Comparison data are kept as aggregated sufficient statistics: per-pair
comparison counts ``n_ij`` and per-direction win counts ``A_ij``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np
from scipy.special import expit

from .errors import DimensionMismatchError, DisconnectedGraphError

#: Absolute tolerance on the zero-sum identifiability constraint.
ZERO_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """Zero-sum vector of log-strength scores for ``d >= 2`` items.

    The array is copied and frozen on construction; all entries must be
    finite and sum to zero within :data:`ZERO_SUM_TOL`.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise ValueError(f"scores must be a 1-d vector, got shape {v.shape}")
        if v.size < 2:
            raise ValueError(f"need at least 2 items, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise ValueError("scores must be finite")
        if abs(float(v.sum())) > ZERO_SUM_TOL:
            raise ValueError(
                f"scores must sum to 0 within {ZERO_SUM_TOL:g}, got sum {v.sum():g}"
            )
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def centered(cls, values: Iterable[float] | np.ndarray) -> "ScoreVector":
        """Build a score vector by subtracting the mean (pairwise gaps unchanged)."""
        v = np.asarray(values, dtype=np.float64)
        return cls(v - v.mean())

    @property
    def d(self) -> int:
        return int(self.values.size)

    @property
    def sup_norm(self) -> float:
        """Dynamic-range parameter: the sup norm of the (zero-sum) scores."""
        return float(np.abs(self.values).max())

    def __len__(self) -> int:
        return self.values.size


def _union_find_connected(d: int, pairs: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(d))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    components = d
    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            components -= 1
    return components == 1


@dataclass(frozen=True, eq=False)
class ComparisonSchedule:
    """Which pairs are compared and how many times.

    ``pair_counts`` maps unordered pairs to positive comparison counts; keys
    are canonicalized to ``(min, max)``. The induced undirected graph must be
    connected (checked on construction), so the normalized Laplacian has a
    single null direction spanned by the all-ones vector.
    """

    d: int
    pair_counts: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"need at least 2 items, got d={self.d}")
        canonical: dict[tuple[int, int], int] = {}
        for (i, j), count in self.pair_counts.items():
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-comparison ({i},{j}) is not allowed")
            if not (0 <= i < self.d and 0 <= j < self.d):
                raise ValueError(f"pair ({i},{j}) out of range for d={self.d}")
            key = (i, j) if i < j else (j, i)
            if key in canonical:
                raise ValueError(f"pair {key} listed more than once")
            count = int(count)
            if count < 1:
                raise ValueError(f"pair {key} has non-positive count {count}")
            canonical[key] = count
        if not canonical:
            raise ValueError("schedule has no compared pairs")
        if not _union_find_connected(self.d, canonical.keys()):
            raise DisconnectedGraphError(
                f"comparison graph on {self.d} items is not connected"
            )
        object.__setattr__(self, "pair_counts", MappingProxyType(canonical))

    @cached_property
    def n(self) -> int:
        """Total number of comparisons across all pairs."""
        return sum(self.pair_counts.values())

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Deterministically ordered edge list ``(i, j, n_ij)`` with ``i < j``."""
        keys = sorted(self.pair_counts)
        i_e = np.array([k[0] for k in keys], dtype=np.intp)
        j_e = np.array([k[1] for k in keys], dtype=np.intp)
        n_e = np.array([self.pair_counts[k] for k in keys], dtype=np.int64)
        for a in (i_e, j_e, n_e):
            a.setflags(write=False)
        return i_e, j_e, n_e

    @cached_property
    def laplacian(self) -> np.ndarray:
        """Normalized Laplacian: off-diagonal ``-n_ij/n``, diagonal the negated row sum."""
        i_e, j_e, n_e = self.edge_arrays
        L = np.zeros((self.d, self.d))
        w = n_e / self.n
        L[i_e, j_e] = -w
        L[j_e, i_e] = -w
        np.fill_diagonal(L, -L.sum(axis=1))
        L.setflags(write=False)
        return L

    @cached_property
    def degrees(self) -> np.ndarray:
        """Number of distinct opponents per item."""
        i_e, j_e, _ = self.edge_arrays
        deg = np.bincount(i_e, minlength=self.d) + np.bincount(j_e, minlength=self.d)
        deg.setflags(write=False)
        return deg

    @property
    def v_max(self) -> int:
        """Maximum degree of the comparison graph."""
        return int(self.degrees.max())

    @property
    def n_edges(self) -> int:
        return len(self.pair_counts)

    def count(self, i: int, j: int) -> int:
        """Comparisons between ``i`` and ``j`` (0 if the pair is not compared)."""
        key = (i, j) if i < j else (j, i)
        return self.pair_counts.get(key, 0)


@dataclass(frozen=True, eq=False)
class OutcomeTable:
    """Observed win counts tied to a schedule.

    ``wins[(i, j)]`` is the number of times ``i`` defeated ``j``; both ordered
    directions are stored for every compared pair and satisfy
    ``A_ij + A_ji = n_ij``. Non-compared pairs are absent.
    """

    schedule: ComparisonSchedule
    wins: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        full: dict[tuple[int, int], int] = {}
        seen: set[tuple[int, int]] = set()
        for (i, j), a in self.wins.items():
            i, j = int(i), int(j)
            key = (i, j) if i < j else (j, i)
            if self.schedule.count(i, j) == 0:
                raise ValueError(f"outcome for non-compared pair ({i},{j})")
            a = int(a)
            if a < 0:
                raise ValueError(f"negative win count for ({i},{j})")
            if (i, j) in seen:
                raise ValueError(f"ordered pair ({i},{j}) listed more than once")
            seen.add((i, j))
            full[(i, j)] = a
        for (i, j), n_ij in self.schedule.pair_counts.items():
            a_ij = full.get((i, j))
            a_ji = full.get((j, i))
            if a_ij is None and a_ji is None:
                raise ValueError(f"no outcomes recorded for compared pair ({i},{j})")
            if a_ij is None:
                a_ij = n_ij - a_ji
            elif a_ji is None:
                a_ji = n_ij - a_ij
            if a_ij < 0 or a_ji < 0 or a_ij + a_ji != n_ij:
                raise ValueError(
                    f"pair ({i},{j}): wins {a_ij}+{a_ji} != n_ij={n_ij}"
                )
            full[(i, j)], full[(j, i)] = a_ij, a_ji
        object.__setattr__(self, "wins", MappingProxyType(full))

    @classmethod
    def from_edge_wins(
        cls, schedule: ComparisonSchedule, wins_lower: np.ndarray
    ) -> "OutcomeTable":
        """Build from wins of the lower-index item, aligned with ``schedule.edge_arrays``."""
        i_e, j_e, n_e = schedule.edge_arrays
        wins_lower = np.asarray(wins_lower, dtype=np.int64)
        if wins_lower.shape != i_e.shape:
            raise ValueError("wins array does not match the schedule's edge list")
        wins = {}
        for i, j, n_ij, a in zip(i_e, j_e, n_e, wins_lower):
            wins[(int(i), int(j))] = int(a)
            wins[(int(j), int(i))] = int(n_ij - a)
        return cls(schedule, wins)

    @property
    def d(self) -> int:
        return self.schedule.d

    def wins_of(self, i: int, j: int) -> int:
        """Times ``i`` defeated ``j`` (0 for non-compared pairs)."""
        return self.wins.get((i, j), 0)

    @cached_property
    def wins_lower(self) -> np.ndarray:
        """Wins of the lower-index item, aligned with ``schedule.edge_arrays``."""
        i_e, j_e, _ = self.schedule.edge_arrays
        a = np.array(
            [self.wins[(int(i), int(j))] for i, j in zip(i_e, j_e)], dtype=np.int64
        )
        a.setflags(write=False)
        return a


@dataclass(frozen=True, eq=False)
class FisherMatrix:
    """Fisher information of the model: an edge-reweighted normalized Laplacian.

    Symmetric, rows sum to zero, off-diagonal entries non-positive; hence
    diagonally dominant and positive semidefinite with the all-ones vector in
    its null space.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"Fisher matrix must be square, got shape {m.shape}")
        if not np.allclose(m, m.T, atol=1e-10, rtol=0.0):
            raise ValueError("Fisher matrix must be symmetric")
        off = m - np.diag(np.diag(m))
        if off.max() > 1e-12:
            raise ValueError("off-diagonal Fisher entries must be non-positive")
        if np.diag(m).min() < -1e-12:
            raise ValueError("diagonal Fisher entries must be non-negative")
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m.sum(axis=1)).max() > 1e-12 * scale:
            raise ValueError("Fisher matrix rows must sum to zero")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def d(self) -> int:
        return int(self.entries.shape[0])


def _check_dims(w: ScoreVector, d: int) -> None:
    if w.d != d:
        raise DimensionMismatchError(f"score vector has d={w.d}, expected {d}")


def win_probability(w: ScoreVector, i: int, j: int) -> float:
    """Probability that ``i`` beats ``j``: ``exp(w_i)/(exp(w_i)+exp(w_j))``."""
    if i == j:
        raise ValueError("items must be distinct")
    if not (0 <= i < w.d and 0 <= j < w.d):
        raise ValueError(f"item index out of range for d={w.d}")
    return float(expit(w.values[i] - w.values[j]))


def log_likelihood(w: ScoreVector, data: OutcomeTable) -> float:
    """Normalized log-likelihood of the observed win counts at scores ``w``.

    Equals ``-(1/n) * sum over pairs [A_ij*log(1+e^(w_j-w_i)) + A_ji*log(1+e^(w_i-w_j))]``,
    evaluated with ``logaddexp`` so large score gaps cannot overflow. Always <= 0,
    and invariant under a common shift of all scores since only gaps enter.
    """
    _check_dims(w, data.d)
    i_e, j_e, n_e = data.schedule.edge_arrays
    a_e = data.wins_lower
    x = w.values[i_e] - w.values[j_e]
    terms = a_e * np.logaddexp(0.0, -x) + (n_e - a_e) * np.logaddexp(0.0, x)
    return float(-terms.sum() / data.schedule.n)


def gradient(w: ScoreVector, data: OutcomeTable) -> np.ndarray:
    """Gradient of :func:`log_likelihood` at ``w``.

    Entry ``i`` is ``(1/n) * sum_j (A_ij - n_ij p_ij(w))``; the entries sum to
    zero up to round-off, so the gradient lives in the zero-sum subspace.
    """
    _check_dims(w, data.d)
    i_e, j_e, n_e = data.schedule.edge_arrays
    a_e = data.wins_lower
    r = a_e - n_e * expit(w.values[i_e] - w.values[j_e])
    g = np.bincount(i_e, weights=r, minlength=data.d) - np.bincount(
        j_e, weights=r, minlength=data.d
    )
    return g / data.schedule.n


def fisher_information(w: ScoreVector, schedule: ComparisonSchedule) -> FisherMatrix:
    """Fisher information matrix at ``w`` for the given schedule.

    Off-diagonal ``(i,j)`` entry is ``L_ij / (e^((w_i-w_j)/2) + e^((w_j-w_i)/2))^2``
    = ``-n_ij p_ij p_ji / n``; the diagonal is the negated row sum. The model's
    Hessian does not depend on the outcomes, so no data are required, and this
    matrix equals the negative Hessian of the log-likelihood at ``w``.
    """
    _check_dims(w, schedule.d)
    i_e, j_e, n_e = schedule.edge_arrays
    x = w.values[i_e] - w.values[j_e]
    weight = (n_e / schedule.n) * expit(x) * expit(-x)
    m = np.zeros((schedule.d, schedule.d))
    m[i_e, j_e] = -weight
    m[j_e, i_e] = -weight
    np.fill_diagonal(m, -m.sum(axis=1))
    return FisherMatrix(m)


def sample_outcomes(
    w: ScoreVector, schedule: ComparisonSchedule, seed: int
) -> OutcomeTable:
    """Draw win counts ``A_ij ~ Binomial(n_ij, p_ij(w))`` for every compared pair.

    Deterministic given ``seed`` (a fresh PCG64 generator is created per call),
    and ``A_ij + A_ji = n_ij`` holds by construction.
    """
    _check_dims(w, schedule.d)
    i_e, j_e, n_e = schedule.edge_arrays
    p = expit(w.values[i_e] - w.values[j_e])
    rng = np.random.default_rng(seed)
    wins_lower = rng.binomial(n_e, p)
    return OutcomeTable.from_edge_wins(schedule, wins_lower)
