"""Per-row full-sort reference engine.

The simplest unambiguous exact batch top-k: stable-argsort each row
descending, keep k, emit in ascending index order. Used as the benchmark
baseline and as a bulk oracle in verification.
"""

from __future__ import annotations

import numpy as np

from .batch import BatchResult, as_matrix, chunk_ranges, resolve_workers
from .errors import KOutOfRangeError


def sort_topk_block(block: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    top = np.argsort(-block, axis=1, kind="stable")[:, :k]
    idx = np.sort(top, axis=1).astype(np.int32)
    vals = np.take_along_axis(block, idx, axis=1)
    return vals, idx


def sort_baseline_topk(matrix, k: int, workers: int | str = 1) -> BatchResult:
    m = as_matrix(matrix)
    n_rows, n_cols = m.shape
    if k < 1 or k > n_cols:
        raise KOutOfRangeError(f"k must be in [1, {n_cols}], got {k}")
    workers = resolve_workers(workers)
    out_vals = np.empty((n_rows, k), np.float32)
    out_idx = np.empty((n_rows, k), np.int32)

    def run(a: int, b: int) -> None:
        vals, idx = sort_topk_block(m[a:b], k)
        out_vals[a:b] = vals
        out_idx[a:b] = idx

    if workers == 1:
        run(0, n_rows)
    else:
        from concurrent.futures import ThreadPoolExecutor

        ranges = chunk_ranges(n_rows, workers)
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            for f in [pool.submit(run, a, b) for a, b in ranges]:
                f.result()
    return BatchResult(out_vals, out_idx)
