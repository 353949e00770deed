"""Repeated-trial experiment drivers.

Each trial is one freshly drawn row (substream keyed by (seed, trial)). Work
is chunked over trials; partial aggregates are reduced in fixed chunk order,
so a run is reproducible for a given seed regardless of worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels
from .datagen import DataGenSpec, trial_block
from .errors import KOutOfRangeError
from .metrics import DENOMINATOR_GUARD, EarlyStopStats
from .select import DEFAULT_HARD_CAP

_MAX_CHUNK_ELEMENTS = 1 << 22


def _chunk_size(n_cols: int) -> int:
    return max(64, min(4096, _MAX_CHUNK_ELEMENTS // max(1, n_cols)))


def _chunks(trials: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(a + size, trials)) for a in range(0, trials, size)]


def _map_chunks(fn, chunks: list[tuple[int, int]], workers: int) -> list:
    if workers <= 1 or len(chunks) == 1:
        return [fn(a, b) for a, b in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: fn(*ab), chunks))


def exit_iteration_grid(
    spec: DataGenSpec,
    ks: list[int],
    epsilon_rel: float,
    trials: int,
    hard_cap: int = DEFAULT_HARD_CAP,
    workers: int = 1,
) -> dict[int, np.ndarray]:
    """Exit iterations of the exact search, per k, over shared trial rows.

    Returns {k: int32 array of length trials}.
    """
    m = spec.n_cols
    for k in ks:
        if not 1 <= k <= m:
            raise KOutOfRangeError(f"k must be in [1, {m}], got {k}")
    out = {k: np.zeros(trials, np.int32) for k in ks}
    reasons = np.zeros(trials, np.int8)

    def run(a: int, b: int) -> None:
        block = trial_block(spec, a, b)
        for k in ks:
            _kernels.exact_trace_chunk(
                block, k, float(epsilon_rel), int(hard_cap),
                out[k][a:b], reasons[a:b],
            )

    _map_chunks(run, _chunks(trials, _chunk_size(m)), workers)
    return out


def _early_stop_partial(block, ks, max_iters, results):
    """Per-chunk sums: results[(k, mi)] += (hit_sum, e1_sum, e2_sum, skipped)."""
    b, m = block.shape
    order = np.argsort(-block, axis=1, kind="stable")
    row_max = block.max(axis=1).astype(np.float64)
    out_vals = np.empty((b, max(ks)), np.float32)
    out_idx = np.empty((b, max(ks)), np.int32)
    iters = np.zeros(b, np.int32)
    reasons = np.zeros(b, np.int8)
    for k in ks:
        opt_idx = order[:, :k]
        opt_min = np.take_along_axis(block, order[:, k - 1 : k], axis=1)[:, 0].astype(np.float64)
        opt_mask = np.zeros((b, m), bool)
        np.put_along_axis(opt_mask, opt_idx, True, axis=1)
        skip = (np.abs(row_max) < DENOMINATOR_GUARD) | (np.abs(opt_min) < DENOMINATOR_GUARD)
        for mi in max_iters:
            _kernels.early_topk_chunk(
                block, k, int(mi), out_vals[:, :k], out_idx[:, :k], iters, reasons
            )
            sel_idx = out_idx[:, :k]
            sel_vals = out_vals[:, :k]
            hit = np.take_along_axis(opt_mask, sel_idx, axis=1).sum(axis=1) / k
            # float64 to match the scalar extreme_errors route bit-for-bit
            e1 = np.abs(sel_vals.max(axis=1).astype(np.float64) - row_max) / np.abs(row_max)
            e2 = np.abs(sel_vals.min(axis=1).astype(np.float64) - opt_min) / np.abs(opt_min)
            keep = ~skip
            results[(k, mi)] = (
                float(hit.sum()),
                float(e1[keep].sum()),
                float(e2[keep].sum()),
                int(skip.sum()),
            )


def early_stop_grid(
    spec: DataGenSpec,
    ks: list[int],
    max_iters: list[int],
    trials: int,
    workers: int = 1,
) -> dict[tuple[int, int], EarlyStopStats]:
    """Early-stop quality vs the optimal selection over a (k, max_iter) grid.

    Every grid cell sees the same trial rows. Hit is averaged over all
    trials; E1/E2 over trials whose reference extremes pass the denominator
    guard (the rest are counted as skipped).
    """
    m = spec.n_cols
    for k in ks:
        if not 1 <= k <= m:
            raise KOutOfRangeError(f"k must be in [1, {m}], got {k}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    def run(a: int, b: int) -> dict:
        block = trial_block(spec, a, b)
        partial: dict = {}
        _early_stop_partial(block, ks, max_iters, partial)
        return partial

    partials = _map_chunks(run, _chunks(trials, _chunk_size(m)), workers)

    stats: dict[tuple[int, int], EarlyStopStats] = {}
    for key in [(k, mi) for k in ks for mi in max_iters]:
        hit_sum = e1_sum = e2_sum = 0.0
        skipped = 0
        for p in partials:  # fixed chunk order keeps float sums reproducible
            h, e1, e2, s = p[key]
            hit_sum += h
            e1_sum += e1
            e2_sum += e2
            skipped += s
        used = trials - skipped
        stats[key] = EarlyStopStats(
            e1_pct=(e1_sum / used * 100.0) if used else float("nan"),
            e2_pct=(e2_sum / used * 100.0) if used else float("nan"),
            hit_pct=hit_sum / trials * 100.0,
            trials=trials,
            skipped=skipped,
        )
    return stats


def early_stop_experiment(
    gen: DataGenSpec, k: int, max_iter: int, trials: int, workers: int = 1
) -> EarlyStopStats:
    """Single-cell convenience wrapper around early_stop_grid."""
    return early_stop_grid(gen, [k], [max_iter], trials, workers=workers)[(k, max_iter)]
