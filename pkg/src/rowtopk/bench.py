"""Wall-clock benchmark of the batch engine against the full-sort baseline."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

from .baseline import sort_baseline_topk
from .batch import BatchConfig, batch_topk
from .datagen import DataGenSpec, generate_matrix
from .select import SearchConfig


@dataclass(frozen=True)
class BenchPoint:
    n_rows: int
    n_cols: int
    k: int
    mode: str
    workers: int
    median_ms: float
    min_ms: float
    repeats: int


def _time(fn, warmup: int, repeats: int) -> tuple[float, float]:
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(samples), min(samples)


def make_runner(matrix, k: int, mode: str, workers: int, max_iter: int = 4):
    if mode == "exact":
        cfg = BatchConfig(k=k, search=SearchConfig.exact(), workers=workers)
        return lambda: batch_topk(matrix, cfg)
    if mode == "early-stop":
        cfg = BatchConfig(k=k, search=SearchConfig.early_stop(max_iter), workers=workers)
        return lambda: batch_topk(matrix, cfg)
    if mode == "sort":
        return lambda: sort_baseline_topk(matrix, k, workers=workers)
    raise ValueError(f"unknown mode {mode!r}")


def run_bench(
    n_list: list[int],
    m_list: list[int],
    k_list: list[int],
    modes: list[str],
    workers_list: list[int],
    repeats: int = 5,
    warmup: int = 1,
    seed: int = 0,
    max_iter: int = 4,
) -> list[BenchPoint]:
    points = []
    for m in m_list:
        for n in n_list:
            matrix = generate_matrix(DataGenSpec(n_rows=n, n_cols=m, seed=seed))
            for k in k_list:
                if k > m:
                    continue
                for mode in modes:
                    for workers in workers_list:
                        fn = make_runner(matrix, k, mode, workers, max_iter=max_iter)
                        med, lo = _time(fn, warmup, repeats)
                        points.append(
                            BenchPoint(n, m, k, mode, workers, med, lo, repeats)
                        )
    return points
