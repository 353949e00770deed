"""Single-row top-k selection: exact binary-search, early stopping, sort oracle.

All operations are pure functions of their arguments. Rows are float32; other
dtypes are converted (and validated) on entry. Selected indices are returned
in ascending order; the values are *not* sorted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptyRowError, KOutOfRangeError, NaNInputError


class SearchMode(enum.Enum):
    EXACT = "exact"
    EARLY_STOP = "early-stop"


class ExitReason(enum.IntEnum):
    """Why the search loop stopped (codes match the kernel constants)."""

    COUNT_EQUALS_K = _kernels.EXIT_COUNT_EQUALS_K
    INTERVAL_BELOW_EPSILON = _kernels.EXIT_INTERVAL_BELOW_EPSILON
    MAX_ITER_REACHED = _kernels.EXIT_MAX_ITER_REACHED
    HARD_CAP_REACHED = _kernels.EXIT_HARD_CAP_REACHED
    DEGENERATE_ROW = _kernels.EXIT_DEGENERATE_ROW


# Exact mode: 64 halvings exhaust float32 resolution on any realistically
# scaled bracket; the no-progress check inside the loop normally exits first.
DEFAULT_HARD_CAP = 64
DEFAULT_MAX_ITER = 4


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the threshold search.

    epsilon_rel is the relative precision: the loop stops once the bracket is
    narrower than epsilon_rel * max(row); 0 means full precision. max_iter is
    the fixed iteration budget of early-stop mode (ignored in exact mode);
    hard_cap is the absolute bound on exact-mode iterations (ignored in
    early-stop mode).
    """

    mode: SearchMode = SearchMode.EXACT
    epsilon_rel: float = 0.0
    max_iter: int = DEFAULT_MAX_ITER
    hard_cap: int = DEFAULT_HARD_CAP

    def __post_init__(self) -> None:
        if self.epsilon_rel < 0:
            raise ValueError(f"epsilon_rel must be >= 0, got {self.epsilon_rel}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.hard_cap < 1:
            raise ValueError(f"hard_cap must be >= 1, got {self.hard_cap}")

    @classmethod
    def exact(cls, epsilon_rel: float = 0.0, hard_cap: int = DEFAULT_HARD_CAP) -> "SearchConfig":
        return cls(mode=SearchMode.EXACT, epsilon_rel=epsilon_rel, hard_cap=hard_cap)

    @classmethod
    def early_stop(cls, max_iter: int = DEFAULT_MAX_ITER) -> "SearchConfig":
        return cls(mode=SearchMode.EARLY_STOP, max_iter=max_iter)


@dataclass(frozen=True)
class TopKResult:
    """k selected values and their source indices, in ascending index order."""

    values: np.ndarray  # float32, shape (k,)
    indices: np.ndarray  # int32, shape (k,)

    @property
    def k(self) -> int:
        return int(self.indices.shape[0])

    def index_set(self) -> frozenset[int]:
        return frozenset(int(i) for i in self.indices)


@dataclass(frozen=True)
class SearchTrace:
    """Exit bookkeeping for one search: 1-based exit iteration (0 = the loop
    body never ran) and the reason the loop stopped."""

    exit_iteration: int
    exit_reason: ExitReason


def as_row(values) -> np.ndarray:
    """Validate and convert one row to a contiguous float32 vector."""
    v = np.ascontiguousarray(values, dtype=np.float32)
    if v.ndim != 1:
        raise EmptyRowError(f"expected a 1-D row, got shape {v.shape}")
    if v.shape[0] == 0:
        raise EmptyRowError("row must contain at least one element")
    if np.isnan(v).any():
        raise NaNInputError("row contains NaN")
    return v


def _check_k(k: int, m: int) -> int:
    k = int(k)
    if k < 1 or k > m:
        raise KOutOfRangeError(f"k must be in [1, {m}], got {k}")
    return k


def min_max(row) -> tuple[float, float]:
    """Smallest and largest element of the row."""
    v = as_row(row)
    mn, mx = _kernels.row_min_max(v)
    return float(mn), float(mx)


def count_ge(row, thres: float) -> int:
    """Number of elements >= thres (inclusive comparison)."""
    v = as_row(row)
    t = np.float32(thres)
    if np.isnan(t):
        raise NaNInputError("threshold is NaN")
    return int(_kernels.count_ge(v, t))


def _full_row_result(v: np.ndarray) -> tuple[TopKResult, SearchTrace]:
    res = TopKResult(values=v.copy(), indices=np.arange(v.shape[0], dtype=np.int32))
    return res, SearchTrace(0, ExitReason.DEGENERATE_ROW)


def exact_topk(row, k: int, cfg: SearchConfig | None = None) -> tuple[TopKResult, SearchTrace]:
    """Exact top-k of one row via threshold bisection.

    With cfg.epsilon_rel == 0 the selected value multiset equals the true k
    largest values, duplicates included. With epsilon_rel > 0 the result still
    has exactly k elements, each >= the final bracket lower bound, but
    borderline elements within the eps-wide bracket may be traded for each
    other (taken in index order).
    """
    if cfg is None:
        cfg = SearchConfig.exact()
    if cfg.mode is not SearchMode.EXACT:
        raise ValueError("exact_topk requires cfg.mode == SearchMode.EXACT")
    v = as_row(row)
    k = _check_k(k, v.shape[0])
    if k == v.shape[0]:
        return _full_row_result(v)
    thres, mn, mx, cnt, it, reason = _kernels.exact_search(
        v, k, float(cfg.epsilon_rel), int(cfg.hard_cap)
    )
    out_vals = np.empty(k, np.float32)
    out_idx = np.empty(k, np.int32)
    _kernels.select_exact(
        v, k, thres, mn, mx, cnt, cfg.epsilon_rel == 0.0,
        reason == _kernels.EXIT_DEGENERATE_ROW, out_vals, out_idx,
    )
    return (
        TopKResult(values=out_vals, indices=out_idx),
        SearchTrace(int(it), ExitReason(int(reason))),
    )


def early_stop_topk(row, k: int, cfg: SearchConfig) -> tuple[TopKResult, SearchTrace]:
    """Approximate top-k: exactly cfg.max_iter bisection steps, then the first
    k elements (index order) with value >= the final lower bound."""
    if cfg.mode is not SearchMode.EARLY_STOP:
        raise ValueError("early_stop_topk requires cfg.mode == SearchMode.EARLY_STOP")
    v = as_row(row)
    k = _check_k(k, v.shape[0])
    if k == v.shape[0]:
        return _full_row_result(v)
    mn, _, it, reason = _kernels.early_search(v, k, int(cfg.max_iter))
    out_vals = np.empty(k, np.float32)
    out_idx = np.empty(k, np.int32)
    n = _kernels.select_threshold(v, k, mn, mn, out_vals, out_idx)
    assert n == k  # count(v >= mn) >= k by the update rule
    return (
        TopKResult(values=out_vals, indices=out_idx),
        SearchTrace(int(it), ExitReason(int(reason))),
    )


def oracle_topk(row, k: int) -> TopKResult:
    """Reference selection by full sort: k largest by (value desc, index asc),
    returned in ascending index order."""
    v = as_row(row)
    k = _check_k(k, v.shape[0])
    top = np.argsort(-v, kind="stable")[:k]
    idx = np.sort(top).astype(np.int32)
    return TopKResult(values=v[idx], indices=idx)
