"""Exception types shared across the package."""


class StsRankError(Exception):
    """Base class for all errors raised by stsrank."""


class LengthMismatchError(StsRankError, ValueError):
    """Vectors or permutations of incompatible lengths were combined."""


class PreconditionError(StsRankError, ValueError):
    """An input violated a documented precondition.

    ``clause`` names the failed condition so callers and reports can cite it.
    """

    def __init__(self, clause: str, message: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {message}" if message else clause)


class NotInOrbitError(StsRankError, ValueError):
    """No permutation maps the source onto the requested target."""


class ParseError(StsRankError, ValueError):
    """A text representation could not be decoded."""


class ParityUndefinedError(StsRankError, ValueError):
    """A parallel class is neither even nor odd with respect to a vector."""


class ConstructionError(StsRankError, RuntimeError):
    """An assembled design failed one of its internal audits."""
