"""Exception types raised across the package.

Most errors derive from ``ValueError`` so that callers doing generic input
validation keep working; the concrete classes exist so tests and the CLI can
react to specific failure modes.
"""


class FuzzySvmError(Exception):
    """Base class for all package-specific errors."""


class MalformedHeaderError(FuzzySvmError, ValueError):
    """A KEEL file is missing required header structure (e.g. ``@data``)."""


class NonNumericFeatureError(FuzzySvmError, ValueError):
    """An input attribute/column holds non-numeric (categorical) values."""


class SingleClassError(FuzzySvmError, ValueError):
    """All rows share one label; a binary problem needs both classes."""


class EmptyDataError(FuzzySvmError, ValueError):
    """No data rows were found."""


class RaggedRowsError(FuzzySvmError, ValueError):
    """CSV rows do not all have the same number of fields."""


class MoreThanTwoClassesError(FuzzySvmError, ValueError):
    """The label column holds more than two distinct values."""


class UnknownPositiveLabelError(FuzzySvmError, ValueError):
    """The requested positive label does not occur in the label column."""


class TooFewSamplesPerClassError(FuzzySvmError, ValueError):
    """A class has fewer samples than the requested fold count."""


class DegenerateSplitError(FuzzySvmError, ValueError):
    """A train/test split would leave a class empty on one side."""


class LengthMismatchError(FuzzySvmError, ValueError):
    """Two aligned vectors have different lengths."""


class DimensionMismatchError(FuzzySvmError, ValueError):
    """Feature dimensionality differs from what a model was trained on."""


class AllZeroCostClassError(FuzzySvmError, ValueError):
    """Every sample of one class has cost zero; the dual would be one-sided."""


class AllMinorityExcludedError(FuzzySvmError, ValueError):
    """Every minority sample received membership zero; refitting would be
    single-class."""


class DegenerateStatisticError(FuzzySvmError, ZeroDivisionError):
    """The Friedman F statistic is undefined (rank variance saturated)."""


class UnsupportedModelCountError(FuzzySvmError, ValueError):
    """No critical value is tabulated for this number of models."""


class NoPositivesError(FuzzySvmError, ValueError):
    """A score-based metric needs at least one positive label."""
