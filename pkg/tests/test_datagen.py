import numpy as np
import pytest

from rowtopk import DataGenSpec, generate_matrix, trial_block, trial_row


def test_matrix_deterministic():
    spec = DataGenSpec(16, 8, seed=1)
    assert np.array_equal(generate_matrix(spec), generate_matrix(spec))


def test_matrix_moments_within_window():
    m = generate_matrix(DataGenSpec(500, 256, seed=3))  # 128k draws
    assert abs(float(m.mean())) < 0.05
    assert abs(float(m.var()) - 1.0) < 0.05


def test_block_equals_rows():
    spec = DataGenSpec(1, 32, seed=11)
    block = trial_block(spec, 5, 9)
    for t in range(5, 9):
        assert np.array_equal(block[t - 5], trial_row(spec, t))


def test_spec_validation():
    with pytest.raises(ValueError):
        DataGenSpec(0, 4)
    with pytest.raises(ValueError):
        DataGenSpec(4, 0)


def test_dtype_and_shape():
    m = generate_matrix(DataGenSpec(3, 5, seed=0))
    assert m.dtype == np.float32
    assert m.shape == (3, 5)
