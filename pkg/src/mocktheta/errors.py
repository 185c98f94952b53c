"""Exception hierarchy shared by all mocktheta modules."""


class MockThetaError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedRootError(MockThetaError):
    """Requested a root of unity zeta_n with n not dividing 240."""


class InvalidAutomorphismError(MockThetaError):
    """Automorphism exponent is not coprime to 240."""


class NonInvertibleError(MockThetaError):
    """Attempted to invert zero, or a series with no leading term."""


class UnsupportedTwistError(MockThetaError):
    """A shift z -> z + c requires a root of unity outside Q(zeta_240)."""


class InsufficientPrecisionError(MockThetaError):
    """A coefficient or comparison was requested beyond the tracked bound."""


class DivergentProductError(MockThetaError):
    """Infinite Pochhammer product with non-increasing exponents."""


class FormulaDomainError(MockThetaError):
    """Input outside the domain of a closed formula (e.g. even d in v_eta^2)."""


class PrecisionRefusalError(MockThetaError):
    """An identity check was requested below its Sturm requirement."""


class ConvergenceError(MockThetaError):
    """Numerical quadrature failed to reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class UnsupportedEvaluationError(MockThetaError):
    """Numeric evaluation of an object whose completion is not specified."""
