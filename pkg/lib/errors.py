"""
Error hierarchy - every failure the library can report
Each class carries the process exit code the CLI maps it to.
"""


class HoloscopeError(Exception):
    """Base class for all library errors"""

    exit_code = 2


class GeometryError(HoloscopeError):
    """Bulk geometry violates its invariants"""


class NonAsymptoticallyAdS(GeometryError):
    """f(z) does not approach 1 at the boundary"""


class NonPositiveParameter(GeometryError):
    """A length, depth or dimension is out of range"""


class NonMonotoneProfile(GeometryError):
    """Tabulated profile depths are not strictly increasing"""


class DomainError(HoloscopeError):
    """Argument outside the domain of an operation"""


class NumericsError(HoloscopeError):
    """Quadrature, root finding or shooting failed to converge"""

    exit_code = 3


class BracketError(HoloscopeError):
    """Transition bracket has the same phase at both ends"""


class ScanError(HoloscopeError):
    """Sweep cannot run: every point failed, or the sweep itself is invalid"""

    exit_code = 3


class SweepSpecError(ScanError):
    """Sweep grid, measures or geometry do not describe a valid sweep"""

    exit_code = 2


class ShapeCheckError(HoloscopeError):
    """A figure dataset was written but does not have its expected shape"""

    exit_code = 3


class ConfigError(HoloscopeError):
    """Run configuration cannot be parsed or is inconsistent"""


class IoError(HoloscopeError):
    """Output could not be written"""


class EmptySeriesError(IoError):
    """Nothing to emit"""

    def __init__(self, message: str = "EmptySeries: no records to emit"):
        super().__init__(message)
