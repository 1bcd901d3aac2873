"""
Exception hierarchy for a2stab.

Every domain failure carries a stable ``code`` used by the CLI error object
and an optional ``context`` dict with the offending values.
"""

from typing import Any


class A2StabError(Exception):
    """Base class for all domain errors."""

    code = "a2stab_error"

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "context": self.context}


class InvalidLevelError(A2StabError, ValueError):
    code = "invalid_level"


class WordParseError(A2StabError, ValueError):
    code = "parse_error"


class ChargeError(A2StabError, ValueError):
    """A central charge is zero or its phase lies outside the heart interval."""

    code = "invalid_charge"


class LevelMismatchError(A2StabError, ValueError):
    code = "level_mismatch"


class DiscriminantError(A2StabError):
    """The cubic has a repeated root."""

    code = "discriminant"


class ConvergenceError(A2StabError):
    code = "non_convergence"


class TrackingError(A2StabError):
    """Root or branch continuation could not be carried through a step."""

    code = "tracking_loss"


class SingularParameterError(A2StabError):
    code = "singular_parameter"


class StencilDegeneracyError(A2StabError):
    code = "stencil_degeneracy"


class FitQualityError(A2StabError):
    code = "fit_quality"


class NonCanonicalHeartError(A2StabError):
    code = "non_canonical_heart"


class ReductionError(A2StabError):
    code = "reduction_cap"


class CalibrationError(A2StabError):
    code = "calibration"


class WallCrossingError(A2StabError):
    code = "wall_crossing"
