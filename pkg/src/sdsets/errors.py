"""Exception hierarchy shared across the package."""


class SDSetError(Exception):
    """Base class for all package errors."""


class InvalidDimension(SDSetError, ValueError):
    pass


class DimensionMismatch(SDSetError, ValueError):
    pass


class NotAMember(SDSetError, ValueError):
    pass


class HypothesisViolated(SDSetError, ValueError):
    pass


class NegativeRadicand(SDSetError, ValueError):
    pass


class Inexpressible(SDSetError, ValueError):
    """A square root does not live in the active quadratic extension."""


class IncompatibleExtension(SDSetError, TypeError):
    """Two exact scalars from different quadratic extensions were combined."""


class FallbackToFloat(SDSetError):
    """Exact realization needs radicals outside a single quadratic extension."""


class NotSymmetric(SDSetError, ValueError):
    pass


class AmbiguousProfile(SDSetError, ValueError):
    """Two float inner products are too close to decide whether they differ."""


class NumericInconclusive(SDSetError):
    pass


class UnknownCatalogEntry(SDSetError, KeyError):
    pass


class UnknownFamily(SDSetError, KeyError):
    pass


class AllowedOutOfRange(SDSetError, ValueError):
    pass


class FamilyTooRich(SDSetError, ValueError):
    pass


class ParseError(SDSetError, ValueError):
    pass
