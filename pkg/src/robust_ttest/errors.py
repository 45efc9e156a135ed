"""Exception taxonomy shared across the package.

Everything derives from ValueError so generic callers can keep catching
ValueError, while the CLI maps subclasses onto distinct exit codes.
"""


class RobustTTestError(ValueError):
    """Base class for all errors raised by this package."""


class EmptySample(RobustTTestError):
    """An estimator was given an empty sample."""


class SampleTooSmall(RobustTTestError):
    """The sample has fewer observations than the operation requires."""


class NonFiniteSample(RobustTTestError):
    """The sample contains NaN or infinite values."""


class RankOutOfRange(RobustTTestError):
    """Requested order-statistic rank is outside [1, number of pairs]."""


class ZeroScale(RobustTTestError):
    """The scale estimate is zero, so the test statistic is undefined."""


class InvalidConfig(RobustTTestError):
    """A simulation configuration violates its invariants."""


class EmptyInput(RobustTTestError):
    """An empty value sequence was passed where data is required."""


class InvalidProbability(RobustTTestError):
    """A probability argument lies outside its valid open interval."""


class SampleSizeBelowTable(RobustTTestError):
    """Requested sample size is below the smallest tabled size."""


class TableRowMissing(RobustTTestError):
    """The table has no row for the requested interior sample size."""


class ProbabilityOutsideGrid(RobustTTestError):
    """Requested probability is outside the table grid (no extrapolation)."""


class GridTooCoarse(RobustTTestError):
    """p-values require a dense-grid table, not a publication grid."""


class InsufficientGridPoints(RobustTTestError):
    """The grid has too few points around p for a density estimate."""


class TableFormatError(RobustTTestError):
    """A table file could not be parsed."""


class TableVersionMismatch(TableFormatError):
    """The table file was written by an incompatible generator version."""


class TableMissing(RobustTTestError):
    """A required quantile table was not supplied or could not be found."""


class NormalFallbackWarning(UserWarning):
    """Lookup fell back to the standard normal quantile (n above table)."""
