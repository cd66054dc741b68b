"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A computation would exceed its enumeration budget."""

    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what}: needs {needed} units, budget is {budget}")
        self.what = what
        self.needed = needed
        self.budget = budget


class FieldMismatch(ValueError):
    """Two field contexts cannot be combined the way the caller asked."""


class DegenerateCode(ValueError):
    """A generator matrix has a zero column where a nondegenerate code is required."""


class NotConverged(RuntimeError):
    pass


class InsufficientCoverage(LookupError):
    """An i(k, q) table does not reach far enough to decide a value."""
