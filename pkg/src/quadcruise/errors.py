"""Exception types shared across the package."""


class QuadCruiseError(Exception):
    """Base class for all library-specific errors."""


class InvalidInputError(QuadCruiseError, ValueError):
    """An argument is non-finite or violates a documented precondition."""


class SingularMixerError(QuadCruiseError, ValueError):
    """The motor mixer cannot be inverted (yaw-moment coefficient d = 0)."""


class ThrustTooLowError(QuadCruiseError, ValueError):
    """Collective thrust is below the minimum required for model inversion."""


class NearSingularAttitudeError(QuadCruiseError, ValueError):
    """Attitude is too close to a singular configuration for model inversion."""


class DegenerateProjectionError(QuadCruiseError, ValueError):
    """The roll-inversion projection amplitude is too small to solve."""


class ConfigError(QuadCruiseError, ValueError):
    """A scenario configuration file or flag set failed validation."""


class DivergedSimulationError(QuadCruiseError, RuntimeError):
    """The integrated state became non-finite.

    Carries the simulation time at which divergence was detected and,
    when available, the partial log accumulated up to that point.
    """

    def __init__(self, time: float, partial_log=None):
        super().__init__(f"simulation diverged at t={time:.6g} s")
        self.time = time
        self.partial_log = partial_log
