"""Error types shared across the package."""


class GwadeformError(Exception):
    """Base class for all package-specific errors."""


class ZeroPhiError(GwadeformError):
    """phi = 0 is not allowed (z would be a zero divisor)."""


class MultipleRootError(GwadeformError):
    """phi(z) has a multiple root, so no Bezout pair alpha*phi + beta*phi' = 1 exists."""


class NotCocycleError(GwadeformError):
    """The given cochain is not a cocycle of the periodic complex."""


class UnsupportedPatternError(GwadeformError):
    """The requested basis pattern is outside the implemented comparison-map table."""


class CommutativeAlgebraError(GwadeformError):
    """(lambda, eta) = (1, 0): the algebra is commutative and has no canonical deformation here."""


class MixedCaseError(GwadeformError):
    """lambda != 1 and eta != 0: neither quantum nor classical normal form."""
