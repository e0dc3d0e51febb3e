"""Exception hierarchy shared across the package."""


class KerrJCError(Exception):
    """Base class for all package errors."""


class ParameterError(KerrJCError, ValueError):
    """An invalid physical or grid parameter.

    ``field`` names the offending parameter so callers (the CLI in
    particular) can produce a targeted diagnostic.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class DegenerateBranchError(KerrJCError, ZeroDivisionError):
    """The as-printed closed form divides by a vanishing branch frequency."""


class CutoffError(ParameterError):
    """Fock-space truncation too small to contain the dynamics."""


class DimensionError(KerrJCError, ValueError):
    pass


class NonHermitianError(KerrJCError, ValueError):
    pass


class ConvergenceError(KerrJCError, ArithmeticError):
    pass
