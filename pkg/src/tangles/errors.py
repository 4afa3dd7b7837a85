"""Exception hierarchy.

``PreconditionError`` marks failures of a mathematical hypothesis (the CLI
maps these to exit code 3); plain ``ValueError``/``TypeError`` subclasses are
input-shape problems.
"""


class TanglesError(Exception):
    pass


class PreconditionError(TanglesError):
    """A mathematical precondition on the input does not hold."""


class NotIrreducible(PreconditionError):
    pass


class NotSeparable(PreconditionError):
    pass


class NotInvertible(PreconditionError, ZeroDivisionError):
    pass


class DivisionByZero(NotInvertible):
    pass


class DivisionByZeroPoly(DivisionByZero):
    pass


class CharacteristicTooSmall(PreconditionError):
    pass


class NotAGenerator(PreconditionError):
    pass


class ModuliNotCoprime(PreconditionError):
    pass


class LengthMismatch(TanglesError, ValueError):
    pass


class InvalidStaircase(TanglesError, ValueError):
    pass
