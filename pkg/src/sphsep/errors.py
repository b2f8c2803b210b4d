"""Exception hierarchy shared by every module."""


class SphSepError(Exception):
    """Base class for all errors raised by sphsep."""


class DimensionError(SphSepError, ValueError):
    pass


class ModeError(SphSepError, TypeError):
    """Exact and float data were mixed in one operation."""


class ZeroVectorError(SphSepError, ValueError):
    pass


class MalformedProblemError(SphSepError, ValueError):
    pass


class NotSphericallyConvexError(SphSepError, ValueError):
    """Generators do not span a pointed cone.

    ``weights`` holds a convex combination of the generators equal to zero.
    """

    def __init__(self, message, weights=None):
        super().__init__(message)
        self.weights = weights


class EmptyConeError(SphSepError, ValueError):
    pass


class DegeneratePolytopeError(SphSepError, ValueError):
    pass


class NotInDAlphaError(SphSepError, ValueError):
    pass


class NotSeparableError(SphSepError, ValueError):
    pass


class MixedInputError(SphSepError, ValueError):
    pass


class CertificateError(SphSepError):
    """A certificate identity failed; the message names the first failure."""


class FormatError(SphSepError, ValueError):
    """An instance or certificate file could not be parsed."""
