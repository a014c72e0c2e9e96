"""Exception types shared across the package."""


class ReesError(Exception):
    """Base class for all package errors."""


class GroupTableError(ReesError):
    """A Cayley table violates the group axioms."""


class IrregularMatrixError(ReesError):
    """A structure matrix has an all-zero row or column."""


class InvalidElementError(ReesError):
    """An element does not belong to the semigroup it is used with."""


class ParseError(ReesError):
    """Malformed polynomial, matrix or graph text."""


class MissingAssignmentError(ReesError):
    """An evaluation does not cover every variable of the word."""


class EmptyWordError(ReesError):
    """An operation would produce an empty word."""


class UnsupportedMatrixError(ReesError):
    """No fast procedure covers this structure matrix class."""


class BudgetExceededError(ReesError):
    """An exhaustive search would exceed the configured evaluation budget."""


class WitnessSearchError(ReesError):
    """A claimed witness could not be produced; indicates an internal bug."""
