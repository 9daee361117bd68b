"""
Exception hierarchy for stampkit.

Every error carries a stable ``name`` used by the CLI diagnostic line
(``Error: <name>: <message>``) and by batch check records.
"""


class StampkitError(Exception):
    """Base class for all stampkit domain errors."""

    name = "StampkitError"


# ---------------------------------------------------------------------------
# Input / precondition errors
# ---------------------------------------------------------------------------


class BasisError(StampkitError, ValueError):
    """A denomination list does not form a valid basis."""

    name = "InvalidBasis"


class EmptyBasisError(BasisError):
    name = "Empty"


class NotStrictlyIncreasingError(BasisError):
    name = "NotStrictlyIncreasing"


class NonPositiveError(BasisError):
    name = "NonPositive"


class LengthMismatchError(StampkitError, ValueError):
    name = "LengthMismatch"


class RequiresUnitDenominationError(StampkitError, ValueError):
    """LPSP operations need a basis whose smallest denomination is 1."""

    name = "RequiresUnitDenomination"


class NeedAtLeastTwoDenominationsError(StampkitError, ValueError):
    name = "NeedAtLeastTwoDenominations"


class GcdNotOneError(StampkitError, ValueError):
    """The Frobenius number is only defined for bases with gcd 1."""

    name = "GcdNotOne"


class SmallestElementOneError(StampkitError, ValueError):
    name = "SmallestElementOne"


class InstanceFileError(StampkitError, ValueError):
    """An instance file could not be read or a line is malformed."""

    name = "InstanceFile"


# ---------------------------------------------------------------------------
# Arithmetic / resources
# ---------------------------------------------------------------------------


class ArithmeticOverflowError(StampkitError, OverflowError):
    """A value does not fit the fixed-width storage it must be placed in."""

    name = "Overflow"


class ResourceLimitError(StampkitError):
    """A table would exceed the configured entry cap."""

    name = "ResourceLimit"

    def __init__(self, requested: int, limit: int, what: str = "table"):
        self.requested = requested
        self.limit = limit
        self.what = what
        super().__init__(f"{what} needs {requested} entries, cap is {limit} (raise STAMPKIT_MAX_TABLE)")


# ---------------------------------------------------------------------------
# Self-check failures (always an implementation defect)
# ---------------------------------------------------------------------------


class CertificateError(StampkitError):
    name = "CertificateViolation"


class LemmaViolationError(CertificateError):
    name = "LemmaViolation"


class IdentityViolationError(CertificateError):
    name = "IdentityViolation"
