"""Exception types shared across the toolkit."""


class BettiConeError(Exception):
    """Base class for all toolkit errors."""


class RingMismatch(BettiConeError):
    """A value was used with a ring it does not belong to."""


class InvalidDegreeSequence(BettiConeError):
    """Degree sequence shape is not admissible for the ring."""


class TailError(BettiConeError):
    """Periodic tail rule is violated inside the explicit window.

    `position` is the first (i, j) where entry(i, j) != entry(i+p, j+s).
    """

    def __init__(self, position, message=None):
        self.position = position
        super().__init__(message or f"tail rule violated at column {position[0]}, degree {position[1]}")


class IncompatibleTails(BettiConeError):
    """Diagrams with different periodic tail rules cannot be combined."""


class NotInCone(BettiConeError):
    """Operation requires a cone member; carries the membership violation."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"diagram is not in the cone: {violation}")


class NotAChain(BettiConeError):
    """Degree sequences are not totally ordered."""


class DegreeBoundExceeded(BettiConeError):
    """Resolver degree bound too small to certify minimal generators."""


class PeriodicityNotObserved(BettiConeError):
    """Computed resolution window does not exhibit the certified tail rule."""


class FanCheckFailed(BettiConeError):
    """A fan verification assertion failed; carries a witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
