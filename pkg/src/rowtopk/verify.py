"""Oracle gate: exact mode vs full sort over a grid of shapes and data styles.

Runs the exact engine at full precision against a sort-derived reference and
reports every value-multiset mismatch with enough context (seed, style, row)
to replay it. Data styles deliberately include duplicate-heavy rows, which
exercise the borderline-supplement path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .batch import BatchConfig, batch_topk
from .select import SearchConfig

DATA_STYLES = ("normal", "small-int", "quantized")


@dataclass(frozen=True)
class Mismatch:
    n_cols: int
    k: int
    style: str
    row: int
    seed: int


@dataclass
class VerifyReport:
    trials_per_case: int
    seed: int
    cases: list[tuple[int, int, str]] = field(default_factory=list)
    mismatches: list[Mismatch] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def default_k_grid(m: int) -> list[int]:
    ks = {1, m // 4, m // 2, m - 1, m}
    return sorted(k for k in ks if 1 <= k <= m)


def _style_matrix(style: str, trials: int, m: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng((seed, m, DATA_STYLES.index(style)))
    if style == "normal":
        return rng.standard_normal((trials, m), dtype=np.float32)
    if style == "small-int":
        return rng.integers(-3, 4, (trials, m)).astype(np.float32)
    # coarse quantization leaves many exact ties at arbitrary borderlines
    return np.round(rng.standard_normal((trials, m)) * 4.0).astype(np.float32) / np.float32(4.0)


def _check_case(matrix: np.ndarray, k: int, workers: int | str) -> np.ndarray:
    """Boolean per-row mismatch mask for one (matrix, k) case."""
    cfg = BatchConfig(k=k, search=SearchConfig.exact(), workers=workers)
    res = batch_topk(matrix, cfg)
    got = np.sort(res.values, axis=1)
    want = np.sort(matrix, axis=1)[:, matrix.shape[1] - k :]
    bad = ~np.all(got == want, axis=1)
    # index discipline: strictly increasing, values taken from the row
    if res.indices.shape[1] > 1:
        bad |= ~np.all(np.diff(res.indices, axis=1) > 0, axis=1)
    bad |= ~np.all(np.take_along_axis(matrix, res.indices.astype(np.int64), axis=1) == res.values, axis=1)
    return bad


def verify_grid(
    m_list: list[int],
    trials: int,
    seed: int,
    k_lists: dict[int, list[int]] | None = None,
    workers: int | str = "auto",
    styles: tuple[str, ...] = DATA_STYLES,
    max_report: int = 10,
) -> VerifyReport:
    report = VerifyReport(trials_per_case=trials, seed=seed)
    t0 = time.perf_counter()
    for m in m_list:
        ks = (k_lists or {}).get(m) or default_k_grid(m)
        for style in styles:
            matrix = _style_matrix(style, trials, m, seed)
            for k in ks:
                report.cases.append((m, k, style))
                bad = _check_case(matrix, k, workers)
                if bad.any():
                    for row in np.flatnonzero(bad)[:max_report]:
                        report.mismatches.append(Mismatch(m, k, style, int(row), seed))
    report.elapsed_s = time.perf_counter() - t0
    return report
