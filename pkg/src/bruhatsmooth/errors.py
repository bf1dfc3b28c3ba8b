"""Exception hierarchy shared by every module of the package."""


class BruhatSmoothError(Exception):
    """Base class for all errors raised by this package."""


class UnknownType(BruhatSmoothError, ValueError):
    pass


class MalformedCartan(BruhatSmoothError, ValueError):
    pass


class NonFiniteType(BruhatSmoothError):
    pass


class CapExceeded(BruhatSmoothError):
    pass


class SystemMismatch(BruhatSmoothError, ValueError):
    pass


class WordParseError(BruhatSmoothError, ValueError):
    pass


class PreconditionViolated(BruhatSmoothError, ValueError):
    pass


class TheoremViolation(BruhatSmoothError):
    """An involution of a simply laced system broke the parabolic criterion.

    This is the strongest self-check in the package and should never fire.
    """
