"""Exception types raised across the package."""


class PQCError(Exception):
    """Base class for all package errors."""


class BlochOutOfBall(PQCError, ValueError):
    """A Bloch vector (or matrix) does not describe a valid qubit state."""


class DegenerateSpan(PQCError, ValueError):
    """The plaintext span has the wrong affine dimension for the operation."""


class NotUnital(PQCError, ValueError):
    """The channel moves the total mixture (non-zero translation)."""


class NotCP(PQCError, ValueError):
    """The map fails complete positivity."""


class BadDistribution(PQCError, ValueError):
    """Weights or probabilities do not form a probability distribution."""


class DimensionMismatch(PQCError, ValueError):
    """Operators of incompatible sizes were combined."""


class PreconditionFailed(PQCError):
    """A verification precondition does not hold."""


class UnachievableTarget(PQCError, ValueError):
    """Target output lies outside the achievable ball of the plaintext span."""

    def __init__(self, distance: float, radius: float):
        self.distance = float(distance)
        self.radius = float(radius)
        super().__init__(
            f"target at distance {self.distance:.12g} from 1/2 I lies outside "
            f"the achievable ball of radius {self.radius:.12g}"
        )


class DegenerateSpanWarning(UserWarning):
    """Emitted when sampling a zero-dimensional span returns copies."""
