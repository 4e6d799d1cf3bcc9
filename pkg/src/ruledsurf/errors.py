"""Exception types shared across the package.

Every geometric precondition failure raises a subclass of
:class:`GeometryError`, so callers (and the CLI) can distinguish bad input
files from bad geometry with a single ``except`` clause.
"""


class GeometryError(Exception):
    """Base class for geometric precondition failures."""


class NullVectorError(GeometryError):
    """Normalization of a null or zero vector is undefined."""


class NullTangentError(GeometryError):
    """Curve velocity is null or zero somewhere on the interval."""


class DegenerateIndicatrixError(GeometryError):
    """Tangent indicatrix stalls (straight segment); matching is ambiguous."""


class SingularPointError(GeometryError):
    """Surface normal undefined: the coordinate cross product is zero or null."""


class CylindricalRulingError(GeometryError):
    """Operation requires a non-cylindrical ruling (dq must not vanish)."""


class NullSphericalImageError(GeometryError):
    """Ruling derivative is non-zero but null; spherical image degenerates."""


class NullTransitionError(GeometryError):
    """A frame vector or the striction velocity reaches or crosses the null cone."""


class CharacterMismatchError(GeometryError):
    """Striction tangent and ruling have different causal characters."""


class KindMismatchError(GeometryError):
    """Surfaces of different kinds (or timelike subtypes) cannot be compared."""


class DegenerateK1Error(GeometryError):
    """First curvature vanishes on a subinterval."""


class NotDevelopableError(GeometryError):
    """Operation requires developable input surfaces."""


class FrameDegenerationError(GeometryError):
    """Re-orthonormalization hit a near-null intermediate vector."""


class DegenerateFError(GeometryError):
    """Curvature ratio f is below threshold somewhere on the range."""


class CharacterViolationError(GeometryError):
    """Reconstructed striction tangent has the wrong causal character."""


class DomainError(GeometryError):
    """Expression evaluation outside its real domain (division by zero, sqrt of negative)."""


class ParseError(ValueError):
    """Expression or definition-file syntax error.

    Attributes:
        offset: byte offset of the failure in the input text.
        expected: set of token descriptions that would have been accepted.
    """

    def __init__(self, message: str, offset: int, expected: set[str] | None = None):
        self.message = message
        self.offset = offset
        self.expected = expected or set()
        super().__init__(f"{message} at offset {offset}")
