"""Exception hierarchy shared across the package."""


class SloccError(Exception):
    """Base class for all library errors."""


class StateFormatError(SloccError):
    """Malformed state document: bad field, bad entry, wrong length, zero vector."""


class DimensionMismatchError(SloccError):
    """Operands refer to different qubit counts or incompatible fields."""


class SingularOperatorError(SloccError):
    """A local operator violates its GL/SL determinant contract."""


class RowBitsError(SloccError):
    """Row-bit pair out of range or not distinct."""


class FixtureError(SloccError):
    """Unknown fixture name or violated side condition."""


class RandomDrawError(SloccError):
    """Bounded redraw loop for random operators exhausted."""
