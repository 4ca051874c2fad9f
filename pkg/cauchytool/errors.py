from typing import Optional


class CauchyToolError(Exception):
    """
    Base class for all errors raised by cauchytool.
    """


class InvalidParameterError(CauchyToolError):
    """
    A numeric parameter violates the precondition of an operation.
    """


class EmptyRangeError(CauchyToolError):
    """
    A scan over sites or times has nothing to scan.
    """


class NeedsLongerTableError(CauchyToolError):
    """
    The overlap table ends before the requested D threshold is reached.
    """

    def __init__(self, threshold: float, n_max: Optional[int] = None) -> None:
        """
        Initialize instance with the D threshold that could not be resolved.
        """
        self.threshold = threshold
        self.n_max = n_max
        super().__init__(
            "Overlap table (N_max={}) does not reach D threshold {:.6g}, build a longer table".format(
                n_max, threshold
            )
        )


class ResourceLimitError(CauchyToolError):
    """
    The requested computation does not fit the configured memory or size budget.
    """


class NumericOverflowError(CauchyToolError):
    """
    A layer recursion produced non-finite weights.
    """


class InvalidPlanError(CauchyToolError):
    """
    A coarse-graining plan violates its scale constraints.
    """


class TooLargeBetaError(InvalidPlanError):
    """
    The planner scales collapse (q >= u or u >= l), beta is too large for the table.
    """


class ConfigError(CauchyToolError):
    """
    A run configuration field is invalid.
    """

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__("Invalid config field '{}': {}".format(field, message))


class CacheMismatchError(CauchyToolError):
    """
    A cached table was built for another law than the one requested.
    """
