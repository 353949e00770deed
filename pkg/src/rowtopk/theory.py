"""Closed-form iteration model for rows of normally distributed values.

For a row of M i.i.d. N(mu, sigma^2) values and a target count k, the model
predicts the threshold the search converges to, the width of the borderline
gap it must resolve, the initial bracket width, and from their ratio the
expected number of bisection iterations:

    expected_thres     = mu + sigma * Phi^-1(1 - k/M)
    borderline_delta   = 1 / (M * pdf(expected_thres))
    initial_interval   = 2 * sigma * sqrt(2 ln M)
    expected_iterations = log2(2 M sqrt(ln M / pi))
                          - Phi^-1(1 - k/M)^2 / (2 ln 2)

The last form is algebraically log2(initial_interval / borderline_delta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonPositiveSigmaError
from .normal import normal_pdf, normal_quantile


@dataclass(frozen=True)
class TheoryParams:
    M: int
    k: int
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if self.M < 2:
            raise ValueError(f"M must be >= 2, got {self.M}")
        if not 1 <= self.k < self.M:
            raise ValueError(f"k must satisfy 1 <= k < M, got k={self.k}, M={self.M}")
        if self.sigma <= 0:
            raise NonPositiveSigmaError(f"sigma must be > 0, got {self.sigma}")


@dataclass(frozen=True)
class TheoryReport:
    expected_thres: float
    borderline_delta: float
    initial_interval: float
    expected_iterations: float


def theory_report(p: TheoryParams) -> TheoryReport:
    z = normal_quantile(1.0 - p.k / p.M)
    expected_thres = p.mu + p.sigma * z
    delta = 1.0 / (p.M * normal_pdf(expected_thres, p.mu, p.sigma))
    initial = 2.0 * p.sigma * math.sqrt(2.0 * math.log(p.M))
    expected_iters = (
        math.log2(2.0 * p.M * math.sqrt(math.log(p.M) / math.pi))
        - z * z / (2.0 * math.log(2.0))
    )
    return TheoryReport(
        expected_thres=expected_thres,
        borderline_delta=delta,
        initial_interval=initial,
        expected_iterations=expected_iters,
    )
