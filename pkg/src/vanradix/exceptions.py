"""Exception hierarchy.

Everything raised on bad input derives from :class:`VandermondeError`, which is
itself a ``ValueError`` so callers that only care about "bad argument" can
catch the builtin.
"""


class VandermondeError(ValueError):
    """Base class for all errors raised by this package."""


class NonPowerOfTwo(VandermondeError):
    pass


class RadiusOutOfRange(VandermondeError):
    pass


class SpecMismatch(VandermondeError):
    """The transform kind is incompatible with the node direction or radius."""


class LengthMismatch(VandermondeError):
    pass


class SizeTooLarge(VandermondeError):
    """Dense oracle requested above the configured size cap."""


class DivergentGamma(VandermondeError):
    """``k * u >= 1``, so gamma_k is undefined."""


class BoundDiverges(VandermondeError):
    """The radix-2 bound denominator ``1 - t*nu`` is not positive."""


class NotRealizable(VandermondeError):
    """Signal flow graph would need time advances (counterclockwise kinds)."""


class EmptyGraph(VandermondeError):
    pass
