"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CatenoidError(Exception):
    """Base class for all errors raised by :mod:`catenoid_vortex`."""


class DomainError(CatenoidError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class CoincidentVortices(CatenoidError):
    """Two vortices came closer than the collision cutoff.

    ``pair`` holds the offending indices, ``kernel`` the value of the pair
    kernel that triggered the check and ``time`` the simulation time (filled
    in by the integrator when the collision happens mid-run).
    """

    def __init__(self, pair: tuple[int, int], kernel: float, time: float | None = None):
        self.pair = pair
        self.kernel = kernel
        self.time = time
        super().__init__(self._message())

    def _message(self) -> str:
        i, j = self.pair
        msg = f"vortices {i} and {j} coincide (pair kernel {self.kernel:.3e})"
        if self.time is not None:
            msg += f" at t={self.time:.9g}"
        return msg

    def __str__(self) -> str:
        return self._message()


class DegenerateVelocity(CatenoidError, ValueError):
    """Velocity with zero energy; no geodesic class can be assigned."""


class OutsideDomain(DomainError):
    """A supercritical orbit was evaluated inside its forbidden band."""


class WrongRegime(CatenoidError, ValueError):
    """Operation not defined for the geodesic regime it was handed."""


class IntegrationError(CatenoidError):
    """Base for integrator failures; ``record`` keeps the partial trajectory."""

    def __init__(self, message: str, record=None):
        super().__init__(message)
        self.record = record


class StepFailure(IntegrationError):
    """The adaptive step size underflowed before the tolerance was met."""


class MaxStepsExceeded(IntegrationError):
    """The step budget ran out before reaching the final time."""


class ConfigError(CatenoidError, ValueError):
    """A scenario configuration is malformed."""
