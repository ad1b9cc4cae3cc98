"""Exception hierarchy.

The CLI maps these onto exit codes: validation errors to 2, unmet
preconditions / theorem hypotheses to 3, resource caps to 4.
"""

from __future__ import annotations


class AbelCoverError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ValidationError(AbelCoverError, ValueError):
    """Malformed input: ragged rows, bad modulus, inconsistent vectors."""

    exit_code = 2


class StructuralError(ValidationError):
    pass


class UnramifiedColumnError(ValidationError):
    """A column of the monodromy matrix is zero (unramified at t_j)."""


class RamifiedAtInfinityError(ValidationError):
    """The columns do not sum to zero, so the cover would ramify over infinity."""


class PreconditionError(AbelCoverError, ValueError):
    """Input is well formed but outside the domain of the requested operation."""

    exit_code = 3


class UnsupportedInputError(PreconditionError):
    """A theorem hypothesis (e.g. genus >= 4) is not met."""


class CapExceededError(AbelCoverError, RuntimeError):
    exit_code = 4


class AutomorphismCapExceeded(CapExceededError):
    def __init__(self, message: str = "automorphism enumeration aborted"):
        super().__init__(message)


class EnumerationCapExceeded(CapExceededError):
    """Raised when a sweep hits its candidate cap.

    ``partial`` holds the representatives emitted so far and
    ``resume_token`` can be passed back to continue the stream.
    """

    def __init__(self, message, partial=(), resume_token=None):
        super().__init__(message)
        self.partial = list(partial)
        self.resume_token = resume_token
