"""Exception hierarchy.

Every domain error derives from :class:`OpImageError` so the CLI can map
them all to exit code 1.
"""


class OpImageError(Exception):
    """Base class for domain errors raised by this package."""


class MismatchedContext(OpImageError, ValueError):
    """Operands live in different rings (nvars or field differ)."""


class IndexOutOfRange(OpImageError, IndexError):
    pass


class SingularMatrix(OpImageError, ValueError):
    pass


class NonZPure(OpImageError, ValueError):
    """A polynomial that must be free of the u (xi) variables is not."""


class NonConstantLeading(OpImageError, ValueError):
    pass


class PositiveCharacteristic(OpImageError, ValueError):
    """Operation needs a characteristic-zero field."""


class NotIntegrable(OpImageError, ValueError):
    """The integrability condition d_j h_i = d_i h_j fails.

    ``pair`` holds the offending 0-based index pair ``(i, j)``.
    """

    def __init__(self, pair, message=None):
        self.pair = tuple(pair)
        i, j = pair[0] + 1, pair[1] + 1
        super().__init__(message or f"d_{j} h_{i} != d_{i} h_{j}")


class NonCommuting(OpImageError, ValueError):
    def __init__(self, pair, message=None):
        self.pair = tuple(pair)
        super().__init__(message or f"operators {pair[0] + 1} and {pair[1] + 1} do not commute")


class AllZeroOrder(OpImageError, ValueError):
    """Family has no order-one operator; its image is the ideal of the gens."""


class OracleDisagreement(OpImageError, AssertionError):
    """Two membership criteria that must agree did not. Always a bug."""


class NotUnimodular(OpImageError, ValueError):
    pass


class NotHomogeneous(OpImageError, ValueError):
    pass


class PolySyntaxError(OpImageError, ValueError):
    """Parse failure; ``offset`` is the byte offset into the source text."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class ZeroDenominator(PolySyntaxError):
    pass


class ImaginaryInNonGaussianField(PolySyntaxError):
    pass
