"""Error types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI and the
service can map failures onto stable JSON payloads and exit codes.
"""

from __future__ import annotations


class LatforgeError(Exception):
    """Base class for all package errors."""

    code = "error"

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self)}


class InputError(LatforgeError):
    """Malformed user input (bad rational string, bad file, bad flag)."""

    code = "invalid-input"


class InvalidModulusError(LatforgeError):
    code = "invalid-modulus"


class InvalidBasisError(LatforgeError):
    """Columns are linearly dependent or dimensionally inconsistent."""

    code = "invalid-basis"


class DimensionMismatchError(LatforgeError):
    code = "dimension-mismatch"


class DeskScaleError(LatforgeError):
    """The request exceeds the configured exhaustive-search limits."""

    code = "desk-scale-limit"


class WrongCosetError(LatforgeError):
    code = "wrong-coset"


class RadiusExceededError(LatforgeError):
    code = "radius-exceeded"


class ConstructionInvalidError(LatforgeError):
    code = "construction-invalid"


class InvalidSigmaError(LatforgeError):
    code = "invalid-sigma"


class InvalidSpecialIndexError(LatforgeError):
    code = "invalid-special-index"


class NotApplicableError(LatforgeError):
    """The requested check needs structure the input lattice does not have."""

    code = "not-applicable"


class InternalError(LatforgeError):
    """An internal consistency check failed; indicates a bug, not bad input."""

    code = "internal-error"
