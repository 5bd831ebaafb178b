"""Exception hierarchy shared by all modules."""


class QuiverDTError(Exception):
    """Base class for every error raised by quiverdt."""


class NotDivisible(QuiverDTError, ArithmeticError):
    """A Laurent polynomial division has a nonzero remainder."""


class NonExactDivision(NotDivisible):
    """A division that must be exact by theory was not (an enumeration bug)."""


class NonIntegralResult(QuiverDTError, AssertionError):
    """An exact 1/n intermediate failed to clear; signals a convention bug."""


class NonUnitConstantTerm(QuiverDTError, ValueError):
    pass


class NonzeroConstantTerm(QuiverDTError, ValueError):
    pass


class ConstantTermNotOne(QuiverDTError, ValueError):
    pass


class TruncationMismatch(QuiverDTError, ValueError):
    pass


class LengthMismatch(QuiverDTError, ValueError):
    pass


class ZeroDimension(QuiverDTError, ValueError):
    pass


class NegativeArrowCount(QuiverDTError, ValueError):
    pass


class NotSymmetric(QuiverDTError, ValueError):
    pass


class NonIntegralInput(QuiverDTError, ValueError):
    pass


class NonGenericStability(QuiverDTError):
    """The stability fails the genericity check; ``witness`` holds ``(d, e, <d,e>)``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
