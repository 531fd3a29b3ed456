"""Exception hierarchy; the CLI maps each class to its own exit code."""


class UrysonError(Exception):
    exit_code = 1


class ParseError(UrysonError, ValueError):
    exit_code = 2


class DimensionMismatch(UrysonError, ValueError):
    exit_code = 3


class TailIncompatible(UrysonError):
    """Tails on different point lattices, or no closed form in the tail family."""

    exit_code = 4


class CapExceeded(UrysonError):
    """An exact enumeration would exceed its configured cap."""

    exit_code = 5


class PreconditionError(UrysonError, ValueError):
    exit_code = 6


class MissingValue(UrysonError, KeyError):
    """A partial operator has no table entry for a member it was asked about."""

    exit_code = 7


class NotAnExtension(UrysonError):
    exit_code = 7
