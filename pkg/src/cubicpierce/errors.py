"""Exception types shared across the package."""


class UsageError(ValueError):
    """Arguments violate a documented precondition (mixed fields, duplicates, overlap)."""


class DegenerateInputError(ValueError):
    """The requested object does not exist for this input (line through one point, ...)."""


class UnsupportedError(NotImplementedError):
    """Operation is not available for this field or representation."""


class InfiniteGroupError(ArithmeticError):
    """A subgroup closure exceeded its cap or provably has infinite order."""
