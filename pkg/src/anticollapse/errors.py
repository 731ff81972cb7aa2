"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: bad face, unknown vertex, wrong domain."""


class StepError(InputError):
    """An elementary move whose precondition does not hold on the current complex."""


class SizeError(InputError):
    """An exhaustive computation was requested beyond its guard."""


class SearchBudgetExceeded(RuntimeError):
    """A randomized search ran out of budget. Carries attempt statistics."""

    def __init__(self, message: str, stats: dict | None = None):
        super().__init__(message)
        self.stats = dict(stats or {})
