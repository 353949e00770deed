"""rowtopk: batched row-wise top-k selection by binary threshold search.

The exact mode bisects [min, max] of each row until exactly k elements clear
the threshold (a supplement pass resolves duplicated borderline values); the
early-stop mode truncates the bisection at a fixed iteration budget and
trades exactness for speed. An analysis layer provides quality metrics, exit
statistics and the closed-form iteration model for normal data.
"""

__version__ = "1.0.0"

from .batch import BatchConfig, BatchResult, as_matrix, batch_topk, resolve_workers
from .baseline import sort_baseline_topk
from .datagen import DataGenSpec, Distribution, generate_matrix, trial_block, trial_row
from .errors import (
    BadMagicError,
    DegenerateDenominatorError,
    DimensionMismatchError,
    EmptyInputError,
    EmptyRowError,
    KMismatchError,
    KOutOfRangeError,
    NaNInputError,
    NonPositiveSigmaError,
    ProbabilityOutOfRangeError,
    RowTopKError,
    TruncatedFileError,
    VerificationError,
)
from .experiments import early_stop_experiment, early_stop_grid, exit_iteration_grid
from .io import load_matrix, load_result, save_matrix, save_result
from .metrics import (
    EarlyStopStats,
    ExitHistogram,
    cumulative_at,
    exit_statistics,
    extreme_errors,
    hit_rate,
)
from .normal import normal_cdf, normal_pdf, normal_quantile
from .select import (
    ExitReason,
    SearchConfig,
    SearchMode,
    SearchTrace,
    TopKResult,
    as_row,
    count_ge,
    early_stop_topk,
    exact_topk,
    min_max,
    oracle_topk,
)
from .theory import TheoryParams, TheoryReport, theory_report
from .verify import VerifyReport, verify_grid

__all__ = [
    "__version__",
    "BadMagicError",
    "BatchConfig",
    "BatchResult",
    "DataGenSpec",
    "DegenerateDenominatorError",
    "DimensionMismatchError",
    "Distribution",
    "EarlyStopStats",
    "EmptyInputError",
    "EmptyRowError",
    "ExitHistogram",
    "ExitReason",
    "KMismatchError",
    "KOutOfRangeError",
    "NaNInputError",
    "NonPositiveSigmaError",
    "ProbabilityOutOfRangeError",
    "RowTopKError",
    "SearchConfig",
    "SearchMode",
    "SearchTrace",
    "TheoryParams",
    "TheoryReport",
    "TopKResult",
    "TruncatedFileError",
    "VerificationError",
    "VerifyReport",
    "as_matrix",
    "as_row",
    "batch_topk",
    "count_ge",
    "cumulative_at",
    "early_stop_experiment",
    "early_stop_grid",
    "early_stop_topk",
    "exact_topk",
    "exit_iteration_grid",
    "exit_statistics",
    "extreme_errors",
    "generate_matrix",
    "hit_rate",
    "load_matrix",
    "load_result",
    "min_max",
    "normal_cdf",
    "normal_pdf",
    "normal_quantile",
    "oracle_topk",
    "resolve_workers",
    "save_matrix",
    "save_result",
    "sort_baseline_topk",
    "theory_report",
    "trial_block",
    "trial_row",
    "verify_grid",
]
