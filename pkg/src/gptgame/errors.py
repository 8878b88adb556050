"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: InputError -> 1, CapacityError -> 2,
NumericalError (and anything unexpected) -> 3.
"""


class GptGameError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GptGameError):
    """Malformed or inconsistent user input (shapes, documents, ranges)."""


class CapacityError(GptGameError):
    """A configured desk-scale cap would be exceeded."""


class NumericalError(GptGameError):
    """A numerical routine produced an unusable result."""


class DegeneracyError(NumericalError):
    """The simplex kernel broke down (tiny pivot, iteration cap, NaN)."""
