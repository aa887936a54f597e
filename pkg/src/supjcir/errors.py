"""Exception hierarchy shared by every module."""


class SupJcirError(Exception):
    """Base class for all library errors."""


class InvariantViolation(SupJcirError, ValueError):
    """A constructed value breaks one of its invariants.

    ``invariant`` names the violated rule so callers (the CLI in particular)
    can report it verbatim.
    """

    def __init__(self, invariant, message=None):
        self.invariant = invariant
        super().__init__(message or invariant)


class NonConvergent(SupJcirError, ArithmeticError):
    pass


class UnsupportedMoment(SupJcirError, ValueError):
    pass


class ParameterOutOfRange(SupJcirError, ValueError):
    pass


class Divergent(SupJcirError, ArithmeticError):
    pass


class DomainError(SupJcirError, ValueError):
    pass


class DegenerateDistortion(SupJcirError, ValueError):
    pass


class ZeroVariance(SupJcirError, ValueError):
    pass


class DegenerateEmpirical(SupJcirError, ValueError):
    pass


class FitFailed(SupJcirError, RuntimeError):
    pass


class InadmissibleQuery(SupJcirError, ValueError):
    """Raised by :func:`supjcir.orlicz.require_admissible`."""

    def __init__(self, reason, message):
        self.reason = reason
        super().__init__(f"{reason.value}: {message}")
