"""Exception hierarchy shared by every module."""


class PoissonError(Exception):
    """Base class for all errors raised by poisson_coact."""


class IndexOutOfRange(PoissonError):
    pass


class DimensionMismatch(PoissonError):
    pass


class InvalidAlgebra(PoissonError):
    pass


class NotAHomomorphism(PoissonError):
    pass


class BudgetExceeded(PoissonError):
    def __init__(self, count, cap):
        super().__init__(f"monomial count {count} exceeds budget {cap}")
        self.count = count
        self.cap = cap


class DegreeOverflow(PoissonError):
    pass


class ConstraintViolation(NotAHomomorphism):
    def __init__(self, family, witness, message=None):
        what = "s" if len(witness) == 1 else "(i, j, s)"
        super().__init__(message or f"{family} constraint fails at {what} = {tuple(witness)}")
        self.family = family
        self.witness = witness


class DescentFailure(PoissonError):
    pass


class FileFormatError(PoissonError, ValueError):
    """A data file is malformed or inconsistent with its declared contents."""
