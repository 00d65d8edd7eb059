"""
Error types raised by twistlab services.

All of them are ValueErrors so callers that only care about "bad input or
bad result" can catch one thing.
"""


class TwistLabError(ValueError):
    """Base class for every domain error."""


class PreconditionError(TwistLabError):
    """An operation was called outside its stated domain."""


class CapacityError(TwistLabError):
    """A configured capacity cap would be exceeded."""


class InsufficientTermsError(CapacityError):
    def __init__(self, message: str, required_terms: int) -> None:
        super().__init__(message)
        self.required_terms = required_terms


class CurveNotFoundError(TwistLabError):
    """Unknown corpus label, or no matching eigenform at the curve's level."""


class AmbiguousEigenspaceError(TwistLabError):
    def __init__(self, level: int, dimension: int, pmax: int) -> None:
        super().__init__(
            f"eigenspace at level {level} has dimension {dimension} after p <= {pmax}; "
            f"ambiguous, raise pmax"
        )
        self.level = level
        self.dimension = dimension
        self.pmax = pmax


class NormalizationError(TwistLabError):
    """The integral normalization of the eigenform pairing failed."""


class PeriodBridgeError(TwistLabError):
    def __init__(self, ratio: float, M: int) -> None:
        super().__init__(f"period bridge failure for M={M}: ratio {ratio!r} is not +-2^j with |j| <= 4")
        self.ratio = ratio
        self.M = M


class TorsionError(TwistLabError):
    """Torsion bound and exhibited torsion points disagree."""


class UndecidedError(TwistLabError):
    """Local solubility could not be decided at the maximal precision."""


class TheoremViolation(TwistLabError):
    """A theorem's conclusion or a ledger identity failed on a concrete instance."""
