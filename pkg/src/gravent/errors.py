"""Exception types raised across the package."""


class GraventError(ValueError):
    """Base class for all package errors."""


class ConfigError(GraventError):
    pass


class ImaginaryFrequency(GraventError):
    pass


class UnstablePump(GraventError):
    pass


class NonpositiveMeasurementRate(GraventError):
    pass


class DimensionMismatch(GraventError):
    pass


class NotStable(GraventError):
    """Drift matrix is not Hurwitz, so no unique steady state exists."""


class SolveFailed(GraventError):
    pass


class Unphysical(GraventError):
    pass


class DegenerateDenominator(GraventError):
    pass


class ZeroDetuning(GraventError):
    pass


class ConjugationViolation(GraventError):
    pass


class TruncationNotConverged(GraventError):
    pass


class NoUniqueSteadyState(GraventError):
    pass
