"""Exception types shared across the library."""


class WrightDistError(Exception):
    """Base class for all library errors."""


class PoleInNumerator(WrightDistError):
    """Gamma pole in a numerator that is not a removable limit."""


class SeriesNotConverged(WrightDistError):
    """Series truncated before reaching the requested tolerance."""


class DivisionNearZero(WrightDistError):
    """Denominator below the machine-safe floor."""


class InvalidParams(WrightDistError):
    """Parameter combination outside the supported domain."""


class DomainError(WrightDistError):
    """Evaluation point outside the function's domain."""


class DeltaRegime(WrightDistError):
    """The distribution has degenerated to a point mass; density queries are meaningless.

    Carries the location of the atom in ``location``.
    """

    def __init__(self, location, message=None):
        self.location = location
        super().__init__(message or f"point mass at {location}; no density available")


class MomentUndefined(WrightDistError):
    """The requested moment does not exist (or hits a non-removable pole)."""


class KurtosisUndefined(WrightDistError):
    """Kurtosis formula hits a pole or yields an invalid value."""


class AsymptoticInvalid(WrightDistError):
    """Large-x asymptotic requested outside its validity region."""


class QuadratureFailed(WrightDistError):
    """Adaptive quadrature could not reach tolerance; diagnostics attached."""

    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class OscillationTooFast(WrightDistError):
    """Oscillatory integral needs more segments than the configured budget."""


class PositivityViolation(WrightDistError):
    """Skew distribution evaluated to a significantly negative density."""


class DimensionMismatch(WrightDistError):
    """Vector/matrix dimensions do not agree."""


class DimensionTooLarge(WrightDistError):
    """Requested dimension above the supported cap."""


class NoFactorFound(WrightDistError):
    """Covariance adjustment search exhausted its bracket."""


class NoIntersection(WrightDistError):
    """Contour tracing found no intersection; diagnostics attached."""

    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class DegenerateSample(WrightDistError):
    """Sample has zero variance or is otherwise unusable."""


class Exploded(WrightDistError):
    """SDE path exceeded the configured ceiling."""
