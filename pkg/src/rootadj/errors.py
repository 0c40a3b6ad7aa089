"""Exception types shared across the package."""


class RootAdjError(Exception):
    """Base class for all rootadj exceptions."""


class IdentityInput(RootAdjError):
    """An operation that needs a non-identity isometry got (plus or minus) the identity."""


class NumericalDegeneracy(RootAdjError):
    """A computation is too ill-conditioned to trust at the configured tolerance."""


class DegenerateLineMatrix(RootAdjError):
    """M - M^-1 vanished, so no line matrix exists."""


class UnresolvedOrder(RootAdjError):
    """A rotation angle looks rational only beyond the denominator bound."""


class CoincidentLines(RootAdjError):
    """Two half-turn lines coincide; their composition would be the identity."""


class NotAnInvolution(RootAdjError):
    """H_L composed with g is not an involution, so no factoring line exists."""


class NotDisjoint(RootAdjError):
    """Inputs share a point, so no common perpendicular exists."""


class NoPerpendicular(RootAdjError):
    """Both inputs reduce to the same point; the perpendicular is undefined."""


class IntersectingAxes(RootAdjError):
    """The generators have crossing axes (outside the scope of this tool)."""


class ElementaryGroup(RootAdjError):
    """The generator pair is elementary (shared fixed point or axis)."""


class NotStoppingInput(RootAdjError):
    """The hexagon is not a recognized stopping configuration."""


class GeometryViolation(RootAdjError):
    """An internal geometric consistency check failed (tolerance breakdown)."""


class BudgetExceeded(RootAdjError):
    """A word enumeration would exceed the configured budget."""


class ParseError(RootAdjError):
    """Input document is not valid JSON."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(RootAdjError):
    """Input document parsed but failed schema validation."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
