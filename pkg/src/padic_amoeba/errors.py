"""Exception types raised by the amoeba pipeline."""


class AmoebaError(Exception):
    """Base class for every error raised by this package."""


class InvalidPrimeError(AmoebaError, ValueError):
    pass


class InvalidSupportError(AmoebaError, ValueError):
    """The support matrix has the wrong shape (e.g. too few columns)."""


class DegenerateInputError(AmoebaError):
    """Input violates the general-position assumption."""


class DegenerateSupportError(DegenerateInputError):
    """The extended support matrix is rank deficient."""


class NonTransversalIndexSetError(DegenerateInputError):
    """The chosen forms do not have a unique common zero."""


class RepeatedZeroError(DegenerateInputError):
    """Two linear forms share a zero."""


class DegenerateFamilyError(DegenerateInputError):
    """No linear form depends on the parameter, or a form is identically zero."""


class UndefinedPointError(AmoebaError, ValueError):
    """A linear form vanishes at the evaluation point."""


class UndefinedTropicalFormError(AmoebaError, ValueError):
    """A row of the valuation table is entirely infinite."""


class ParseError(AmoebaError, ValueError):
    pass


class ResolutionError(AmoebaError, ValueError):
    """Grid resolution is too coarse for the requested oracle."""


class InvariantError(AmoebaError, AssertionError):
    """An internal consistency check failed."""
