"""Exception hierarchy shared by all ratsqrt modules."""


class RatsqrtError(Exception):
    """Base class for all errors raised by this package."""


class ZeroInversion(RatsqrtError):
    """Attempted to invert zero in a number field."""


class TowerTooDeep(RatsqrtError):
    """A computation would need a number-field tower of height > 2."""


class ZeroRadicand(RatsqrtError):
    """The radicand is identically zero; the square root is trivially rational."""


class ZeroDenominator(RatsqrtError):
    """A parsed expression divides by the zero polynomial."""


class OddDegree(RatsqrtError):
    """Dehomogenization requested for a homogeneous polynomial of odd degree."""


class UndefinedVariable(RatsqrtError):
    """A substitution map does not assign one of the effective variables."""


class NonReduced(RatsqrtError):
    """An operation requiring a squarefree (reduced) input received one with a
    repeated factor."""


class NonIsolated(RatsqrtError):
    """The singular point is not isolated (partials share a local component)."""


class WrongMultiplicity(RatsqrtError):
    """Projection center does not have the required multiplicity."""


class DegenerateProjection(RatsqrtError):
    """The projection from the chosen center collapses (degree form vanishes)."""


class NonIntegerExponent(RatsqrtError):
    """An exponent in the input expression is not an integer literal."""


class ParseSyntaxError(RatsqrtError):
    """Syntax error while parsing a radicand expression.

    Carries the character offset and a description of what was expected.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
        self.reason = message


class SchemaError(RatsqrtError):
    """An alphabet document does not match the expected JSON schema."""


class TooManyRoots(RatsqrtError):
    """Alphabet exceeds the configured subset-enumeration cap."""


class ResourceLimit(RatsqrtError):
    """A configured resource limit (timeout, height bound) was exceeded."""
