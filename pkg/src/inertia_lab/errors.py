class InertiaLabError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class DecodeError(InertiaLabError, ValueError):
    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class ParameterError(InertiaLabError, ValueError):
    pass


class SizeError(InertiaLabError, ValueError):
    pass


class InputError(InertiaLabError, ValueError):
    pass


class PreconditionError(InertiaLabError, ValueError):
    pass


class HypothesisError(PreconditionError):
    """A hypothesis of the expander bound fails; ``clauses`` names which."""

    def __init__(self, clauses):
        self.clauses = list(clauses)
        super().__init__("hypothesis violated: " + "; ".join(self.clauses))


class ConvergenceError(InertiaLabError, RuntimeError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class ValidationError(InertiaLabError, ValueError):
    pass


class CoverageError(InertiaLabError, ValueError):
    pass


class IntegrityError(InertiaLabError, AssertionError):
    """A computed quantity contradicts a proven inequality."""


class SupportError(InputError):
    """A weighted matrix has a nonzero entry where the target graph has no edge."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value
