"""Exception types shared across the package."""
from __future__ import annotations


class SemiconjError(Exception):
    """Base class for all package errors."""


class InvalidInput(SemiconjError, ValueError):
    """Arguments violate an operation's precondition."""


class UnsupportedPoint(SemiconjError, ValueError):
    """An algebraic point was passed where only rational points are allowed."""


class NotSemiconjugate(SemiconjError):
    """No rational A satisfies A o X = X o B."""


class InfiniteGroup(SemiconjError):
    """The Mobius symmetry group is infinite (map equivalent to a power)."""


class InvalidDecomposition(SemiconjError, ValueError):
    """A claimed decomposition F = U o V does not hold."""


class UndefinedValue(SemiconjError):
    """A quantity is undefined for the given object (e.g. chi of an unstable chain)."""


class LimitExceeded(SemiconjError):
    """A configured size limit (degree cap) was exceeded."""


class ParseError(SemiconjError, ValueError):
    """Expression text could not be parsed."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position
