"""Exception types shared across the package.

The command line tool maps UsageError to exit code 1 and the two
computational failures to exit code 2.
"""


class UsageError(ValueError):
    """Caller asked for something outside an operation's contract."""


class SizeGuardError(RuntimeError):
    """Enumeration refused because the estimated work exceeds the guard."""

    def __init__(self, estimate: float, limit: float):
        self.estimate = estimate
        self.limit = limit
        super().__init__(
            f"estimated point count {estimate:.3g} exceeds guard {limit:.3g}; "
            f"pass force=True to run anyway"
        )


class ComputationError(RuntimeError):
    """A result could not be produced within the requested accuracy or caps."""
