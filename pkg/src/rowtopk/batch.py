"""Row-parallel engine: apply a top-k search to every row of an N x M matrix.

Rows are split into contiguous chunks, one chunk per worker thread; the
kernels release the GIL so chunks run in parallel. Every row's output slot is
pre-addressed, so results are byte-identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatchError,
    EmptyRowError,
    KOutOfRangeError,
    NaNInputError,
)
from .select import ExitReason, SearchConfig, SearchMode, SearchTrace

# The GPU analysis behind this design only covers rows up to 8192 columns;
# wider rows still work but are outside the validated regime.
SOFT_COLS_LIMIT = 8192


def as_matrix(values) -> np.ndarray:
    """Validate and convert to a C-contiguous float32 N x M matrix."""
    m = np.ascontiguousarray(values, dtype=np.float32)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        raise EmptyRowError(f"matrix must be at least 1 x 1, got {m.shape}")
    nan_rows = np.isnan(m).any(axis=1)
    if nan_rows.any():
        raise NaNInputError(f"matrix contains NaN (first offending row: {int(np.argmax(nan_rows))})")
    return m


def resolve_workers(workers: int | str) -> int:
    if workers == "auto":
        return max(1, os.cpu_count() or 1)
    w = int(workers)
    if w < 1:
        raise ValueError(f"workers must be >= 1 or 'auto', got {workers}")
    return w


@dataclass(frozen=True)
class BatchConfig:
    k: int
    search: SearchConfig = field(default_factory=SearchConfig.exact)
    workers: int | str = "auto"
    collect_traces: bool = False


@dataclass(frozen=True)
class BatchResult:
    """Per-row selections: row r of values/indices is exactly the single-row
    result for row r of the input."""

    values: np.ndarray  # float32, (N, k)
    indices: np.ndarray  # int32, (N, k)
    trace_iterations: np.ndarray | None = None  # int32, (N,)
    trace_reasons: np.ndarray | None = None  # int8, (N,)

    @property
    def n_rows(self) -> int:
        return int(self.values.shape[0])

    @property
    def k(self) -> int:
        return int(self.values.shape[1])

    def traces(self) -> list[SearchTrace]:
        if self.trace_iterations is None or self.trace_reasons is None:
            raise ValueError("traces were not collected; set collect_traces=True")
        return [
            SearchTrace(int(i), ExitReason(int(r)))
            for i, r in zip(self.trace_iterations, self.trace_reasons)
        ]


def chunk_ranges(n: int, workers: int) -> list[tuple[int, int]]:
    """Contiguous near-equal [start, stop) ranges, one per worker."""
    workers = min(workers, n)
    bounds = np.linspace(0, n, workers + 1, dtype=np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run_chunks(fn, n_rows: int, workers: int) -> None:
    ranges = chunk_ranges(n_rows, workers)
    if len(ranges) == 1:
        fn(*ranges[0])
        return
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        futures = [pool.submit(fn, a, b) for a, b in ranges]
        for f in futures:
            f.result()


def batch_topk(matrix, cfg: BatchConfig) -> BatchResult:
    """Run the configured top-k search over every row of the matrix."""
    m = as_matrix(matrix)
    n_rows, n_cols = m.shape
    k = int(cfg.k)
    if k < 1 or k > n_cols:
        raise KOutOfRangeError(f"k must be in [1, {n_cols}], got {k}")
    workers = resolve_workers(cfg.workers)

    out_vals = np.empty((n_rows, k), np.float32)
    out_idx = np.empty((n_rows, k), np.int32)
    iters = np.zeros(n_rows, np.int32)
    reasons = np.zeros(n_rows, np.int8)

    search = cfg.search
    if search.mode is SearchMode.EXACT:
        eps_rel = float(search.epsilon_rel)
        hard_cap = int(search.hard_cap)

        def run(a: int, b: int) -> None:
            _kernels.exact_topk_chunk(
                m[a:b], k, eps_rel, hard_cap,
                out_vals[a:b], out_idx[a:b], iters[a:b], reasons[a:b],
            )
    else:
        max_iter = int(search.max_iter)

        def run(a: int, b: int) -> None:
            _kernels.early_topk_chunk(
                m[a:b], k, max_iter,
                out_vals[a:b], out_idx[a:b], iters[a:b], reasons[a:b],
            )

    _run_chunks(run, n_rows, workers)

    if cfg.collect_traces:
        return BatchResult(out_vals, out_idx, iters, reasons)
    return BatchResult(out_vals, out_idx)
