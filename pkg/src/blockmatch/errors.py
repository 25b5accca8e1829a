"""Exception types shared across the package."""


class DomainError(ValueError):
    """Raised when an operation's domain preconditions are violated.

    Distinct from plain ``ValueError`` (malformed input data): a
    ``DomainError`` means the input was well-formed but outside the
    contract of the operation (wrong parameter range, tier exceeded,
    undefined query).
    """


class CoverableError(DomainError):
    """Raised when a no-covering-matching precondition fails.

    Carries the offending matching in ``matching`` (a tuple of edges)
    so callers can reproduce the verdict.
    """

    def __init__(self, message: str, matching):
        super().__init__(message)
        self.matching = matching
