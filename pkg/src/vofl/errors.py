"""Exception types raised across the package."""


class VoflError(Exception):
    """Base class for numerical failures."""


class DomainError(ValueError):
    """Argument outside the region where a formula is valid."""


class PoleError(VoflError, ValueError):
    """Evaluation at a pole of a meromorphic function."""


class SeriesConvergenceError(VoflError):
    """A power series failed to converge within the term budget."""


class QuadratureError(VoflError):
    """Quadrature did not reach the requested tolerance."""


class TailBoundError(VoflError):
    """No truncation radius satisfies the tail bound within the cap."""


class SingularSystemError(VoflError):
    """Collocation matrix is numerically singular."""


class BlowUpError(VoflError):
    """A time integration produced a non-finite or exploding state."""


class IllConditionedWarning(UserWarning):
    """Condition estimate above the configured threshold."""


class AccuracyWarning(UserWarning):
    """Result computed outside the argument range with full double accuracy."""


class ConfigError(ValueError):
    """Malformed experiment configuration."""
