"""Exception types shared across the package."""


class RellichConeError(Exception):
    """Base class for all package-specific errors."""


class DegenerateModeError(RellichConeError):
    """Mode denominator h + lambda is not positive.

    Happens only in the critical case alpha = 4 - n at the radial mode;
    callers must route that case to the critical closed form instead.
    """


class SpectrumError(RellichConeError):
    """Invalid or exhausted eigenvalue data."""


class ConvergenceError(RellichConeError):
    """A discretized computation failed its self-convergence check."""


class SolverError(RellichConeError):
    """Eigenvalue solver breakdown (residual above tolerance, singular metric)."""


class NoWitnessError(RellichConeError):
    """Witness search exhausted its family without beating the radial constant.

    Carries a :class:`~rellich_cone.xspace.NoWitnessCertificate` in
    ``certificate`` describing the searched family and the best quotient found.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
