"""Exception and warning types raised across the package."""


class ZakSamplingError(ValueError):
    """Base class for all domain errors."""


class GridMismatch(ZakSamplingError):
    pass


class NonCommensurateDisplacement(ZakSamplingError):
    pass


class NonCommensurateOffset(ZakSamplingError):
    pass


class ConventionMismatch(ZakSamplingError):
    pass


class OutOfRectangle(ZakSamplingError):
    pass


class BandOutOfRange(ZakSamplingError):
    pass


class BandwidthTooLarge(ZakSamplingError):
    pass


class NonvanishingViolated(ZakSamplingError):
    pass


class EpsilonTooLarge(ZakSamplingError):
    pass


class LatticeSpecError(ZakSamplingError):
    pass


class IllConditioned(ZakSamplingError):
    """A least-squares inversion exceeded the allowed condition number.

    The best available (truncated) result is attached as ``partial`` so callers
    can still inspect it.
    """

    def __init__(self, message, partial=None, conditions=None):
        super().__init__(message)
        self.partial = partial
        self.conditions = conditions


class WindowTooSmall(UserWarning):
    pass


class SnapWarning(UserWarning):
    pass
