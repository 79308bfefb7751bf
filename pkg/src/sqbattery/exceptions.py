"""Exception types shared across the library."""


class NotHermitianError(ValueError):
    """Input matrix deviates from its conjugate transpose beyond tolerance."""


class NotUnitaryError(ValueError):
    """Input matrix deviates from unitarity beyond tolerance."""


class EigenConvergenceError(RuntimeError):
    """The Jacobi eigensolver exhausted its sweep budget before converging."""


class ParameterOverflowError(OverflowError):
    """Hyperbolic terms are not representable for this parameter regime."""


class UnknownPresetError(ValueError):
    """Requested figure preset name does not exist."""
