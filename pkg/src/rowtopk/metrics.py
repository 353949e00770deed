"""Quality metrics for approximate selections and exit-iteration statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominatorError, EmptyInputError, KMismatchError
from .select import SearchTrace, TopKResult

# Relative errors are meaningless when the reference extreme sits at (or
# numerically on top of) zero; such trials are skipped and counted.
DENOMINATOR_GUARD = 1e-12


@dataclass(frozen=True)
class EarlyStopStats:
    """Aggregates over an early-stop experiment, in percent."""

    e1_pct: float
    e2_pct: float
    hit_pct: float
    trials: int
    skipped: int


@dataclass(frozen=True)
class ExitHistogram:
    """Distribution of loop exit iterations (1-based; iteration-0 traces, i.e.
    searches whose loop never ran, are excluded)."""

    counts: dict[int, int]
    mean_exit: float
    cumulative_pct: dict[int, float]
    trials: int
    excluded: int


def hit_rate(candidate: TopKResult, optimal: TopKResult) -> float:
    """Fraction of candidate indices that appear in the optimal selection."""
    if candidate.k != optimal.k:
        raise KMismatchError(f"k mismatch: {candidate.k} vs {optimal.k}")
    inter = np.intersect1d(candidate.indices, optimal.indices, assume_unique=True)
    return inter.size / candidate.k


def extreme_errors(candidate: TopKResult, optimal: TopKResult) -> tuple[float, float]:
    """Relative errors of the candidate's max and min value vs the optimal's.

    Raises DegenerateDenominatorError when a reference extreme is closer to
    zero than the guard; callers aggregating over trials count these as
    skipped.
    """
    if candidate.k != optimal.k:
        raise KMismatchError(f"k mismatch: {candidate.k} vs {optimal.k}")
    ref_max = float(optimal.values.max())
    ref_min = float(optimal.values.min())
    if abs(ref_max) < DENOMINATOR_GUARD or abs(ref_min) < DENOMINATOR_GUARD:
        raise DegenerateDenominatorError("reference extreme too close to zero")
    e1 = abs(float(candidate.values.max()) - ref_max) / abs(ref_max)
    e2 = abs(float(candidate.values.min()) - ref_min) / abs(ref_min)
    return e1, e2


def _as_exit_array(traces) -> np.ndarray:
    if isinstance(traces, np.ndarray):
        return traces.astype(np.int64, copy=False)
    arr = [t.exit_iteration if isinstance(t, SearchTrace) else int(t) for t in traces]
    return np.asarray(arr, dtype=np.int64)


def exit_statistics(traces) -> ExitHistogram:
    """Histogram, cumulative percentages and mean of exit iterations.

    Accepts a sequence of SearchTrace or a plain integer array of exit
    iterations.
    """
    exits = _as_exit_array(traces)
    if exits.size == 0:
        raise EmptyInputError("no traces supplied")
    included = exits[exits > 0]
    if included.size == 0:
        raise EmptyInputError("all traces have exit_iteration == 0")
    values, counts = np.unique(included, return_counts=True)
    cum = np.cumsum(counts) / included.size * 100.0
    return ExitHistogram(
        counts={int(v): int(c) for v, c in zip(values, counts)},
        mean_exit=float(included.mean()),
        cumulative_pct={int(v): float(c) for v, c in zip(values, cum)},
        trials=int(included.size),
        excluded=int(exits.size - included.size),
    )


def cumulative_at(hist: ExitHistogram, iteration: int) -> float:
    """Cumulative percentage of exits at or before the given iteration."""
    pct = 0.0
    for it, c in hist.cumulative_pct.items():
        if it <= iteration:
            pct = max(pct, c)
    return pct
