"""Exception hierarchy shared by all aqsl modules."""


class AqslError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(AqslError, ValueError):
    pass


class NoConvergence(AqslError, ArithmeticError):
    pass


class NotPSD(AqslError, ValueError):
    pass


class DimensionMismatch(AqslError, ValueError):
    pass


class NotAState(AqslError, ValueError):
    pass


class ZeroVector(AqslError, ValueError):
    pass


class BadProbabilities(AqslError, ValueError):
    pass


class NotQubitPartyA(AqslError, ValueError):
    pass


class NotTwoQubit(AqslError, ValueError):
    pass


class NegativeTime(AqslError, ValueError):
    pass


class StencilOutOfDomain(AqslError, ValueError):
    pass


class ModeMismatch(AqslError, ValueError):
    pass


class DegenerateBound(AqslError, ArithmeticError):
    pass


class InvalidConfig(AqslError, ValueError):
    pass
