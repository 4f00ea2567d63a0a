"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class MajpatError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(MajpatError):
    """Malformed or out-of-range input (bad permutation text, bad position, ...)."""


class UnsupportedPatternError(InvalidInputError):
    """Operation is undefined for the given pattern (e.g. an increasing pattern)."""


class PreconditionError(InvalidInputError):
    """A documented precondition of an operation was violated by the caller."""


class ResourceLimitError(MajpatError):
    """A configured search bound (node budget, core length, ...) was exceeded."""


class VerificationError(MajpatError):
    """Two independently computed results that must agree do not."""
