"""Special-function accuracy against the frozen high-precision oracle."""

import csv
import math
from pathlib import Path

import numpy as np
import pytest

from rowtopk import normal_cdf, normal_pdf, normal_quantile
from rowtopk.errors import NonPositiveSigmaError, ProbabilityOutOfRangeError

ORACLE_CSV = Path(__file__).parent / "data" / "normal_quantile_oracle.csv"


def load_oracle():
    with open(ORACLE_CSV) as fh:
        rows = list(csv.DictReader(fh))
    return [(float(r["p"]), float(r["quantile"])) for r in rows]


def test_pdf_standard_peak():
    assert normal_pdf(0.0, 0.0, 1.0) == pytest.approx(0.39894228040143267794, abs=1e-12)


def test_pdf_peak_general():
    for mu, sigma in [(0.0, 1.0), (2.5, 0.3), (-7.0, 11.0)]:
        assert normal_pdf(mu, mu, sigma) == pytest.approx(1.0 / (sigma * math.sqrt(2 * math.pi)), abs=1e-12)


def test_pdf_at_one():
    assert normal_pdf(1.0, 0.0, 1.0) == pytest.approx(0.2419707245191433498, abs=1e-12)


def test_pdf_rejects_bad_sigma():
    with pytest.raises(NonPositiveSigmaError):
        normal_pdf(0.0, 0.0, 0.0)
    with pytest.raises(NonPositiveSigmaError):
        normal_pdf(0.0, 0.0, -1.0)


def test_cdf_at_zero():
    assert normal_cdf(0.0) == 0.5


def test_cdf_symmetry():
    for x in np.linspace(-8, 8, 101):
        assert normal_cdf(x) + normal_cdf(-x) == pytest.approx(1.0, abs=1e-12)


def test_cdf_known_value():
    assert normal_cdf(0.6744897501960817432) == pytest.approx(0.75, abs=1e-12)


def test_quantile_median():
    assert normal_quantile(0.5) == 0.0


def test_quantile_known_value():
    assert normal_quantile(0.75) == pytest.approx(0.6744897501960817432, abs=1e-10)


def test_quantile_vs_oracle_grid():
    # frozen mpmath grid (1000 points, tails to 1e-9)
    worst = 0.0
    for p, want in load_oracle():
        got = normal_quantile(p)
        worst = max(worst, abs(got - want))
    assert worst <= 1e-9, f"worst abs error {worst:.3e}"


def test_quantile_cdf_roundtrip():
    ps = np.concatenate([
        np.geomspace(1e-6, 0.4, 300),
        np.linspace(0.4, 0.6, 100),
        1 - np.geomspace(1e-6, 0.4, 300),
    ])
    for p in ps:
        assert normal_cdf(normal_quantile(float(p))) == pytest.approx(float(p), abs=1e-9)


def test_quantile_domain_errors():
    for p in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ProbabilityOutOfRangeError):
            normal_quantile(p)
