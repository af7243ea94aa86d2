"""Exception types shared across the toolkit."""


class BirdstrikeError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(BirdstrikeError, ValueError):
    """An input violates a physical or structural invariant."""


class StationaryAircraftError(BirdstrikeError):
    """The moving-aircraft force model was evaluated at aircraft speed 0.

    The penetration depth divides by the aircraft speed, so the moving-aircraft
    model is singular there. Callers must choose the stationary-aircraft model
    (impact_force_stationary) explicitly; the two models disagree in the limit.
    """


class ParseError(BirdstrikeError):
    """A data file failed to parse or failed row-level validation."""
