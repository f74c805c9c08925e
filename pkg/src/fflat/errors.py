"""Exception types raised by the library.

Every domain error derives from FFLatError so the CLI can map any failure
to a stable name and exit status. Parse errors derive from ValueError as
well, since they signal malformed input rather than a domain violation.
"""


class FFLatError(Exception):
    """Base class for all library errors."""


class DivisionByZero(FFLatError, ZeroDivisionError):
    """Inversion or division by the zero element."""


class UndefinedGcd(FFLatError):
    """gcd(0, 0) requested."""


class ShapeError(FFLatError):
    """Matrix or ambient dimensions incompatible with the operation."""


class SingularMatrix(FFLatError):
    """Square system has no unique solution."""


class DomainError(FFLatError):
    """Entry outside the required ring (e.g. non-polynomial where F_q[T] is required)."""


class RankError(FFLatError):
    """Linearly dependent input where independence is required."""


class GradeError(FFLatError):
    """Exterior-algebra grade out of range for the ambient dimension."""


class NotOrthonormal(FFLatError):
    """Input vectors fail the orthonormality test."""


class NotCompletable(FFLatError):
    """A full orthonormal set with determinant != 1 cannot be completed in place."""


class NormMismatch(FFLatError):
    """Operands required to have equal norm do not."""


class ZeroModule(FFLatError):
    """All-zero generating set where a nonzero module is required."""


class ContainmentError(FFLatError):
    """Subspace not contained in the required span."""


class NotRational(FFLatError):
    """Subspace fails the lattice-rationality requirement."""


class NotSubmodule(FFLatError):
    """Vector or module not contained in the ambient module."""


class NotPrimitive(FFLatError):
    """Submodule is not primitive (not saturated) in the ambient lattice."""


class ProjectionSetupError(FFLatError):
    """Projection inputs violate the setup requirements."""


class UnsupportedFieldSize(FFLatError):
    """Field too large for table-driven arithmetic."""


class ElementParseError(FFLatError, ValueError):
    """Malformed element string; carries the offending position."""

    def __init__(self, message, text=None, pos=None):
        if text is not None and pos is not None:
            message = f"{message} (at position {pos} in {text!r})"
        super().__init__(message)
        self.text = text
        self.pos = pos
