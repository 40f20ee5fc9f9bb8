"""Exception hierarchy shared by all modules."""


class GenringError(Exception):
    """Base class; the CLI maps it to exit code 1."""


class InputError(GenringError, ValueError):
    """Precondition violated by the caller."""


class InvariantViolation(GenringError, AssertionError):
    """An internal closure property failed. Should never happen."""


class Undecided(GenringError):
    """A bounded search ran out of budget without an answer."""

    def __init__(self, message: str, bound=None):
        super().__init__(message)
        self.bound = bound


class BudgetExceeded(Undecided):
    pass
