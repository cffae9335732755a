"""Shared exception classes.

Exit-code mapping used by the CLI: InvalidInput subclasses -> 2,
InternalLimit subclasses (the LevelOverflow family) -> 3.
"""


class Howe3Error(Exception):
    pass


class InvalidInput(Howe3Error):
    pass


class InternalLimit(Howe3Error):
    pass


class NotPrime(InvalidInput):
    pass


class LevelOverflow(InternalLimit):
    pass


class BadParameter(InvalidInput):
    pass


class ZeroInputs(InvalidInput):
    pass


class NotSymmetric(InvalidInput):
    pass


class RamifiedAtZero(InvalidInput):
    pass


class InfinityRoot(InvalidInput):
    pass


class NotGenusOne(InvalidInput):
    pass


class GenusMismatch(InvalidInput):
    pass


class SmallCharacteristic(InvalidInput):
    pass


class NotZeroDimensional(InvalidInput):
    pass


class NoV4(InvalidInput):
    pass


class ZeroCorner(InvalidInput):
    pass


class DegenerateQuotient(InvalidInput):
    pass


class DegenerateDenominator(InvalidInput):
    pass


class NotHyperellipticCase(InvalidInput):
    pass


class HyperellipticCase(InvalidInput):
    pass


class BadQuartic(InvalidInput):
    pass


class UnsupportedQuartic(InvalidInput):
    """Raised by automorphism machinery on quartics without commuting involutions."""
