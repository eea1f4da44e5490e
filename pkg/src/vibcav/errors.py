"""Exception types raised by the library."""


class CavityError(Exception):
    """Base class for all library errors."""


class ParameterError(CavityError, ValueError):
    pass


class PreconditionError(CavityError, ValueError):
    pass


class DomainError(CavityError, ValueError):
    pass


class MonotonicityError(CavityError, ArithmeticError):
    """A phase function (or inner function) failed to be strictly increasing."""


class SolverError(CavityError, RuntimeError):
    def __init__(self, msg, tau=None):
        super().__init__(msg)
        self.tau = tau


class NumericalError(CavityError, RuntimeError):
    def __init__(self, msg, segment=None):
        super().__init__(msg)
        self.segment = segment


class ConfigError(CavityError, ValueError):
    """Invalid or unreadable run configuration."""

    def __init__(self, msg, field=None):
        super().__init__(msg)
        self.field = field
