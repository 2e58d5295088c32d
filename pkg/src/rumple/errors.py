"""Exception hierarchy.  Every error raised on purpose derives from RumpleError."""


class RumpleError(Exception):
    pass


class ParseError(RumpleError, ValueError):
    pass


class DimensionMismatch(RumpleError, ValueError):
    pass


class EntryOutOfRange(RumpleError, ValueError):
    pass


class NotLeftQuasigroup(RumpleError):
    pass


class NotQuasigroup(RumpleError):
    pass


class NoSquareRoot(RumpleError):
    pass


class NotRumple(RumpleError):
    pass


class NotAGroup(RumpleError):
    pass


class NotBothSided(RumpleError):
    pass


class CapExceeded(RumpleError):
    pass


class NotSubgroup(RumpleError):
    pass


class NotLeftNondegenerate(RumpleError):
    pass


class NotBirack(RumpleError):
    pass


class NotRack(RumpleError):
    pass


class IncompatibleMatrix(RumpleError, ValueError):
    pass


class NotInvertible(RumpleError):
    pass


class BoundExceeded(RumpleError):
    pass


class CharMismatch(RumpleError, ValueError):
    pass


class SingularB(RumpleError):
    pass


class NotLatinRumple(RumpleError):
    pass


class InvalidExtension(RumpleError):
    pass


class RumpConditionFails(RumpleError):
    pass


class BaseNotAffineLatin(RumpleError):
    pass


class NodeCapExceeded(RumpleError):
    pass
