"""Exceptions raised by dnls_trains."""
from typing import TYPE_CHECKING, List, Optional

if TYPE_CHECKING:
    from dnls_trains.fixedpoint import PicardReport


class DnlsTrainsError(Exception):
    """Base class of every error raised by this package."""


class InvalidArgumentError(DnlsTrainsError, ValueError):
    """An argument has an invalid shape, type or range."""


class InvalidParameterError(DnlsTrainsError, ValueError):
    """Member parameters lie outside their existence window."""


class DecayViolationError(DnlsTrainsError, ValueError):
    """A field is not small at a boundary where it has to decay."""

    def __init__(self, message: str, boundary: str,
                 member: Optional[str] = None) -> None:
        """Constructor for DecayViolationError.

        :param message: Human readable description.
        :param boundary: "left" or "right".
        :param member: Label of the offending train member, if any.
        """
        super().__init__(message)
        self.boundary = boundary
        self.member = member


class UnsupportedOrientationError(DnlsTrainsError, ValueError):
    """Only falling half-kinks can be used as train members."""


class InsufficientMembersError(DnlsTrainsError, ValueError):
    """The operation needs at least two members."""


class InvalidFamilyError(DnlsTrainsError, ValueError):
    """Scaled family definition is invalid."""


class DegenerateFitError(DnlsTrainsError, ValueError):
    """A log-linear fit cannot be computed from the given series."""


class ValidationError(DnlsTrainsError, ValueError):
    """A train specification breaks one or more of its invariants."""

    def __init__(self, violations: List[str]) -> None:
        """Constructor for ValidationError.

        :param violations: One full sentence per violated condition.
        """
        super().__init__(" ".join(violations))
        self.violations = list(violations)


class DivergenceError(DnlsTrainsError, RuntimeError):
    """The time stepper produced non-finite values."""

    def __init__(self, message: str, time: float) -> None:
        """Constructor for DivergenceError.

        :param message: Human readable description.
        :param time: Last time at which the state was still finite.
        """
        super().__init__(message)
        self.time = time


class ContractionError(DnlsTrainsError, RuntimeError):
    """Picard increments stopped shrinking."""

    def __init__(self, message: str, report: "PicardReport") -> None:
        """Constructor for ContractionError.

        :param message: Human readable description.
        :param report: Report of the iterations done so far.
        """
        super().__init__(message)
        self.report = report
