"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Malformed or inconsistent input data.

    ``field`` names the offending field so callers (and the command-line
    tool) can point at the exact location in a JSON document.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


class BudgetError(RuntimeError):
    """An enumeration would exceed its combinatorial budget.

    Raised up front, before any work is silently truncated.
    """
