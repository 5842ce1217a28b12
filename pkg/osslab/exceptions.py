"""osslab exceptions."""

from typing import Optional


class OsslabError(Exception):
    """Base exception for osslab."""
    def __init__(self, message, residual: Optional[float] = None):
        super().__init__(message)
        self.residual = residual


class ConflictingEntryError(OsslabError):
    """Two seeded components disagree after symmetry propagation."""
    pass


class BianchiViolationError(OsslabError):
    """Tensor fails the first Bianchi identity."""
    pass


class SymmetryViolationError(OsslabError):
    """Dense input is not antisymmetric / pair-symmetric."""
    pass


class NonFiniteValueError(OsslabError):
    """A component is NaN or infinite."""
    pass


class IndexOutOfRangeError(OsslabError):
    pass


class ShapeMismatchError(OsslabError):
    pass


class ZeroVectorError(OsslabError):
    """A direction vector has zero length."""
    pass


class NotOrthonormalError(OsslabError):
    pass


class NonSymmetricError(OsslabError):
    pass


class NoConvergenceError(OsslabError):
    """Eigensolver exceeded its sweep limit."""
    pass


class KernelViolationError(OsslabError):
    """Operator does not annihilate the direction it is restricted against."""
    pass


class WrongDimensionError(OsslabError):
    pass


class NotAdaptedError(OsslabError):
    """No adapted basis exists at the given direction (duality fails there)."""
    pass


class ModelFormatError(OsslabError):
    """Malformed model or report file."""
    pass


class ConfigError(OsslabError):
    """Invalid sampling or generator parameters."""
    pass
