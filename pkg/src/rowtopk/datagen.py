"""Seeded data generation.

Experiments draw one row per trial from an independent substream keyed by
(seed, trial index), so results do not depend on how trials are chunked
across workers and adding trials never perturbs earlier ones. Whole matrices
(for files and benchmarks) come from a single stream.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Distribution(enum.Enum):
    STD_NORMAL = "std-normal"


@dataclass(frozen=True)
class DataGenSpec:
    n_rows: int
    n_cols: int
    distribution: Distribution = Distribution.STD_NORMAL
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_rows < 1:
            raise ValueError(f"n_rows must be >= 1, got {self.n_rows}")
        if self.n_cols < 1:
            raise ValueError(f"n_cols must be >= 1, got {self.n_cols}")


def trial_row(spec: DataGenSpec, trial: int) -> np.ndarray:
    """Row for one experiment trial, from substream (seed, trial)."""
    rng = np.random.default_rng((spec.seed, trial))
    return rng.standard_normal(spec.n_cols, dtype=np.float32)


def trial_block(spec: DataGenSpec, start: int, stop: int) -> np.ndarray:
    """Rows for trials [start, stop), stacked into a (stop-start, M) matrix."""
    block = np.empty((stop - start, spec.n_cols), np.float32)
    for t in range(start, stop):
        block[t - start] = trial_row(spec, t)
    return block


def generate_matrix(spec: DataGenSpec) -> np.ndarray:
    """Full N x M matrix from a single stream keyed by the seed."""
    rng = np.random.default_rng(spec.seed)
    return rng.standard_normal((spec.n_rows, spec.n_cols), dtype=np.float32)
