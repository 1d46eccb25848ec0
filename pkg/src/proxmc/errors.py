"""Exception hierarchy shared by all proxmc modules."""


class ProximityError(Exception):
    """Base class for every error raised by this package."""


# -- space construction ------------------------------------------------------

class DuplicatePoint(ProximityError):
    """A point identifier occurs more than once in a ground set."""


class NonSymmetricInput(ProximityError):
    """An explicit nearness matrix is not symmetric."""


class TableNotPointDetermined(ProximityError):
    """A subset-nearness table violates additivity and therefore cannot be
    compressed to a point relation.

    ``self.triple`` holds masks ``(E, F, G)`` with
    ``(E | F) near G  !=  (E near G or F near G)`` according to the table.
    """

    def __init__(self, message: str, triple=None):
        super().__init__(message)
        self.triple = triple


class UnknownPointReference(ProximityError):
    """A point name that is not part of the ground set was referenced."""


class EmptyCarrier(ProximityError):
    """A subspace carrier must contain at least one point."""


# -- subset handling ---------------------------------------------------------

class SubsetDimensionMismatch(ProximityError):
    """A subset mask has bits outside the space's ground set."""


class GroundSetTooLarge(ProximityError):
    """An exhaustive scan was requested beyond the configured size cap."""


class PreconditionUnmet(ProximityError):
    """An operation's stated hypothesis does not hold for the given input."""


class TheoremViolation(ProximityError):
    """A property that must hold for every valid input failed; this signals a
    bug in the core, not a property of the input."""


# -- descriptive -------------------------------------------------------------

class MissingVector(ProximityError):
    """A probe table lacks a feature vector (or has a wrong-arity vector)
    for a point it must cover."""


# -- maps --------------------------------------------------------------------

class DisagreeOnIntersection(ProximityError):
    """Two maps to be glued differ on a shared domain point."""


class CodomainMismatch(ProximityError):
    """An operation requires maps with identical codomains."""


class CarrierNotInDomain(ProximityError):
    """A retraction carrier is not a subset of the map's domain."""


class SliceNotPc(ProximityError):
    """A slice of a curried map fails proximal continuity, so the curried map
    does not land in the mapping space."""


class EnumerationCapExceeded(ProximityError):
    """A mapping-space enumeration would exceed the configured cap."""


# -- homotopy ----------------------------------------------------------------

class DomainNotInterval(ProximityError):
    """A path predicate was applied to a map whose domain is not a chain."""


class NotPcInput(ProximityError):
    """A homotopy query received a map that is not proximally continuous."""


# -- covering / lifting ------------------------------------------------------

class NotSurjective(ProximityError):
    """Covering-map verification requires a surjective map."""


class NotPc(ProximityError):
    """Covering-map verification requires a proximally continuous map."""


class PointNotInCodomain(ProximityError):
    """A fiber was requested over a point outside the codomain."""


class SearchCapExceeded(ProximityError):
    """A backtracking search exceeded its node budget."""


# -- io ----------------------------------------------------------------------

class SchemaError(ProximityError):
    """An input file does not match the expected schema.

    ``self.field`` names the offending field when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
