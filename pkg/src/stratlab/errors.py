"""Exception hierarchy.

Every domain error derives from :class:`StratError` so callers (and the CLI)
can tell bad input apart from internal failures.  :class:`Contradiction` is
the one error that signals an inconsistent rule base rather than bad input.
"""


class StratError(ValueError):
    """Base class for all domain errors."""


class MalformedInput(StratError):
    pass


class InvariantViolation(StratError):
    pass


class LengthCap(StratError):
    pass


class NonCoprime(StratError):
    pass


class DimensionMismatch(StratError):
    pass


class NotSymmetric(StratError):
    pass


class NotBijective(StratError):
    pass


class InvalidPair(StratError):
    pass


class CellNotFound(StratError):
    pass


class Contradiction(RuntimeError):
    """A rule tried to mark a cell both empty and non-empty."""


class NuCollision(RuntimeError):
    """Two non-isomorphic cycles produced the same nu value during a sum."""
