import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


def random_row(rng, m, style="normal"):
    """Rows for oracle cross-checks; duplicate styles stress the borderline path."""
    if style == "normal":
        return rng.standard_normal(m).astype(np.float32)
    if style == "small-int":
        return rng.integers(-3, 4, m).astype(np.float32)
    if style == "quantized":
        return np.round(rng.standard_normal(m) * 4.0).astype(np.float32) / np.float32(4.0)
    if style == "constant":
        return np.full(m, np.float32(rng.standard_normal()), np.float32)
    raise ValueError(style)


ROW_STYLES = ("normal", "small-int", "quantized", "constant")
