"""Exception types shared across the package."""


class NhcreutzError(Exception):
    """Base class for all package-specific errors."""


class ImbalancedParameters(NhcreutzError):
    """Operation requires t1 == t2 and gamma1 == gamma2 exactly."""


class SingularGauge(NhcreutzError):
    """Gauge similarity matrix is singular (u = 0 or v = 0)."""


class DimensionMismatch(NhcreutzError):
    """Matrix/vector dimensions are inconsistent."""


class ConvergenceFailure(NhcreutzError):
    """Dense eigensolver failed to converge."""


class EmptySpectrum(NhcreutzError):
    """Spectral statistic requested for an empty eigenvalue list."""


class IllConditioned(NhcreutzError):
    """Rank decision not certifiable at the requested tolerance."""


class WrongClass(NhcreutzError):
    """Parameter point does not satisfy the check's classification precondition."""


class ZeroState(NhcreutzError):
    """State vector is identically zero."""


class MissingEigenvectors(NhcreutzError):
    """Operation needs eigenvectors but the spectrum was computed without them."""


class OutOfRange(NhcreutzError):
    """Index argument outside its valid range."""


class Overflow(NhcreutzError):
    """State norm exceeded the floating-point range during propagation."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time
