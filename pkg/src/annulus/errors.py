"""Exception types raised across the package."""


class AnnulusError(Exception):
    """Base class for all errors raised by this package."""


class InputError(AnnulusError):
    """Malformed input file or argument."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DisconnectedRegion(AnnulusError):
    pass


class BadTopology(AnnulusError):
    pass


class NonInvolution(AnnulusError):
    pass


class InteriorVertexDegree(AnnulusError):
    pass


class NoBicoloring(AnnulusError):
    pass


class NotAnAnnulus(AnnulusError):
    pass


class ShapeMismatch(AnnulusError):
    pass


class ZeroPolynomial(AnnulusError):
    pass


class EvalAtZero(AnnulusError):
    pass


class NotACycle(AnnulusError):
    pass


class UnbalancedSegment(AnnulusError):
    pass


class InconsistentHeight(AnnulusError):
    pass


class CapExceeded(AnnulusError):
    pass


class NoTilings(AnnulusError):
    pass


class WallsPresent(AnnulusError):
    pass
