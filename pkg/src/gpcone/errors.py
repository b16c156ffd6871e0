"""Exception types raised across the package."""


class GPConeError(Exception):
    """Base class for all package errors."""


class InvalidParams(GPConeError, ValueError):
    """Cone parameters violate m >= 1, n >= 2 or alpha in the open simplex."""


class DimensionMismatch(GPConeError, ValueError):
    """A vector or matrix does not match the cone dimensions."""


class NegativeCoordinate(GPConeError, ValueError):
    """A coordinate that must be nonnegative is below -tol."""


class NonConvergence(GPConeError, RuntimeError):
    """An iterative solver hit its iteration cap.

    ``best`` holds the best iterate and ``residual`` its residual.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class ZIsZero(GPConeError, ValueError):
    pass


class ZNotOnDualBoundary(GPConeError, ValueError):
    pass


class ZBarNotZero(GPConeError, ValueError):
    pass


class VOnFace(GPConeError, ValueError):
    pass


class NoAdmissibleSamples(GPConeError, RuntimeError):
    pass


class QNotInHyperplane(GPConeError, ValueError):
    pass


class QOutsideBall(GPConeError, ValueError):
    pass


class XOutsideBall(GPConeError, ValueError):
    pass


class EpsOutOfRange(GPConeError, ValueError):
    pass


class OmegaNotOnGaugeSurface(GPConeError, ValueError):
    pass


class ZetaNotUnit(GPConeError, ValueError):
    pass


class InequalityViolated(GPConeError, AssertionError):
    """A checked inequality failed on concrete numbers."""


class SearchExhausted(GPConeError, RuntimeError):
    """No interior point and no exposing vector were found within budget."""


class SocCaseUnsupported(GPConeError, ValueError):
    """The operation is not defined for n = 2, alpha = (1/2, 1/2)."""


class ConstraintViolated(GPConeError, ValueError):
    """A Lie algebra element does not satisfy G + G^T = 2 (alpha . h) I."""
