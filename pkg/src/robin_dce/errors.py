class DCEError(Exception):
    """Base class for errors raised by robin_dce."""


class InvalidParameterError(DCEError, ValueError):
    pass


class OccupationPoleError(DCEError, ZeroDivisionError):
    """Bose-Einstein occupation requested at zero frequency."""


class QuadratureError(DCEError, ArithmeticError):
    """Adaptive integration stopped before reaching the requested tolerance.

    The best available ``value`` and ``error`` are kept on the exception.
    """

    def __init__(self, message, value=float("nan"), error=float("inf")):
        super().__init__(message)
        self.value = value
        self.error = error


class TailUnboundedError(QuadratureError):
    pass
