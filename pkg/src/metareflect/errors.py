"""Exception types raised by metareflect."""


class MetareflectError(Exception):
    """Base class for all package errors."""


class InvalidParameter(MetareflectError, ValueError):
    pass


class VerticalLine(MetareflectError, ValueError):
    """Two points share an abscissa, so no slope-intercept line exists."""


class DegenerateSlope(MetareflectError, ValueError):
    """The Tx-Rx line is horizontal or vertical; its mid-perpendicular has no finite slope."""


class ParallelLines(MetareflectError, ArithmeticError):
    pass


class DegenerateConfig(MetareflectError, ValueError):
    """No rotation of the Tx-Rx pair produced a usable slope."""


class QuadratureFailure(MetareflectError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance."""
