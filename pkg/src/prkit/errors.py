"""Exception hierarchy shared by all prkit modules."""


class PRKitError(Exception):
    """Base class for all errors raised by prkit."""


class MalformedInputError(PRKitError):
    """Invalid identifiers, inconsistent tables, or unparseable documents."""


class PreconditionError(PRKitError):
    """An operation was called on input that violates its stated precondition."""


class BudgetExceededError(PRKitError):
    """An enumeration would exceed a configured budget.

    The violated bound is named so callers can raise it deliberately.
    """

    def __init__(self, bound: str, limit: int, requested: int):
        self.bound = bound
        self.limit = limit
        self.requested = requested
        super().__init__(f"budget exceeded: {bound}={requested} > limit {limit}")


class TheoremViolation(PRKitError):
    """An internal law that must hold by construction failed.

    Raised instead of returning a wrong answer: it signals a bug in this
    library, never a property of the input.
    """
