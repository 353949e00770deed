"""Exception types shared across the package."""


class RowTopKError(Exception):
    """Base class for all rowtopk errors."""


class EmptyRowError(RowTopKError, ValueError):
    """A row (or matrix) with zero elements was supplied."""


class NaNInputError(RowTopKError, ValueError):
    """Input contains NaN; selection over NaN is undefined and rejected."""


class KOutOfRangeError(RowTopKError, ValueError):
    """k is outside [1, M]."""


class DimensionMismatchError(RowTopKError, ValueError):
    """Array shapes are inconsistent with the declared dimensions."""


class BadMagicError(RowTopKError, ValueError):
    """File does not start with the expected magic bytes."""


class TruncatedFileError(RowTopKError, ValueError):
    """File ends before the payload declared in the header."""


class NonPositiveSigmaError(RowTopKError, ValueError):
    """sigma must be strictly positive."""


class ProbabilityOutOfRangeError(RowTopKError, ValueError):
    """Quantile argument must lie strictly inside (0, 1)."""


class KMismatchError(RowTopKError, ValueError):
    """Two selection results being compared have different k."""


class DegenerateDenominatorError(RowTopKError, ValueError):
    """A relative-error reference value is too close to zero."""


class EmptyInputError(RowTopKError, ValueError):
    """An aggregate was requested over zero usable observations."""


class VerificationError(RowTopKError):
    """Oracle cross-check found at least one mismatch."""
