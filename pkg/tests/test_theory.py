"""Iteration-model formulas and their internal consistency."""

import math

import pytest

from rowtopk import TheoryParams, theory_report
from rowtopk.errors import NonPositiveSigmaError

# All (M, k) pairs of the wide exit-statistics table.
GRID = [
    (256, 64), (256, 128),
    (1024, 64), (1024, 128), (1024, 256), (1024, 512),
    (4096, 64), (4096, 128), (4096, 256), (4096, 512),
    (8192, 64), (8192, 128), (8192, 256), (8192, 512),
]


def test_known_point_256_64():
    # evaluated with the high-precision oracle: Phi^-1(0.75), pdf, 2*sqrt(2 ln 256)
    rep = theory_report(TheoryParams(256, 64))
    assert rep.expected_thres == pytest.approx(0.6744897501960817, abs=1e-9)
    assert rep.borderline_delta == pytest.approx(0.012292441720941768, abs=1e-9)
    assert rep.initial_interval == pytest.approx(6.6604368892615815, abs=1e-9)
    assert rep.expected_iterations == pytest.approx(9.081701488014206, abs=1e-9)


def test_half_k_zeroes_quadratic_term():
    rep = theory_report(TheoryParams(256, 128))
    assert rep.expected_thres == 0.0
    assert rep.expected_iterations == pytest.approx(
        math.log2(2 * 256 * math.sqrt(math.log(256) / math.pi)), abs=1e-12
    )


def test_closed_form_equals_log2_ratio():
    for m, k in GRID:
        rep = theory_report(TheoryParams(m, k))
        ratio = math.log2(rep.initial_interval / rep.borderline_delta)
        assert abs(rep.expected_iterations - ratio) <= 1e-9, (m, k)


def test_mu_sigma_shift_scale():
    base = theory_report(TheoryParams(512, 64))
    moved = theory_report(TheoryParams(512, 64, mu=3.0, sigma=2.0))
    assert moved.expected_thres == pytest.approx(3.0 + 2.0 * base.expected_thres, abs=1e-12)
    assert moved.initial_interval == pytest.approx(2.0 * base.initial_interval, abs=1e-12)
    # delta scales with sigma; the iteration count is scale/shift invariant
    assert moved.borderline_delta == pytest.approx(2.0 * base.borderline_delta, abs=1e-12)
    assert moved.expected_iterations == pytest.approx(base.expected_iterations, abs=1e-12)


def test_iterations_increase_with_m_at_fixed_ratio():
    e = [theory_report(TheoryParams(m, m // 4)).expected_iterations for m in (256, 1024, 4096, 8192)]
    assert all(b > a for a, b in zip(e, e[1:]))


def test_iterations_maximized_at_half_m():
    for m in (256, 1024, 4096, 8192):
        mid = theory_report(TheoryParams(m, m // 2)).expected_iterations
        for k in (64, 128, 256, 512):
            if k < m and k != m // 2:
                assert theory_report(TheoryParams(m, k)).expected_iterations < mid


def test_param_validation():
    with pytest.raises(ValueError):
        TheoryParams(1, 1)
    with pytest.raises(ValueError):
        TheoryParams(256, 0)
    with pytest.raises(ValueError):
        TheoryParams(256, 256)  # k == M has no quantile
    with pytest.raises(NonPositiveSigmaError):
        TheoryParams(256, 64, sigma=0.0)
