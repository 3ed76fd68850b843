"""Exception hierarchy shared by every module of the package."""


class DunklError(Exception):
    """Base class for all errors raised by :mod:`dunkl_dihedral`."""


class ValidationError(DunklError, ValueError):
    """Invalid input: mismatched groups, bad multiplicities, bad config."""


class SizeError(DunklError, ValueError):
    """A brute-force computation would exceed its enumeration budget."""


class RegularityError(DunklError, ArithmeticError):
    """``(n + gamma) - A_n`` is singular or numerically marginal."""


class ConvergenceError(DunklError, ArithmeticError):
    """A series was requested outside its region of convergence or did not settle."""


class ChartError(DunklError, ValueError):
    """A recovery formula divides by a quantity that vanishes at the given point."""


class DegenerateMultiplicityError(DunklError, ValueError):
    """The normalising constant ``eta_k`` vanishes for this multiplicity."""


class ConsistencyError(DunklError, AssertionError):
    """An internal identity that must hold analytically failed numerically."""


class ConstantMismatchError(DunklError, ArithmeticError):
    """A derived constant failed validation against an independent route."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SingularPointError(DunklError, ValueError):
    """The point lies on a mirror line where a formula divides by ``<a, x>``."""
