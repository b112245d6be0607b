"""Exception hierarchy for nctrap."""


class NCTrapError(Exception):
    """Base class for all library errors."""


class DomainError(NCTrapError, ValueError):
    """An argument lies outside the admissible domain of an operation."""


class UndefinedReductionError(NCTrapError):
    """The reduced (kinetic-ground) system cannot be formed.

    Raised when the effective coupling G vanishes, which happens for the
    commutative system in the limit of zero magnetic field: the reduced
    frequency K/G and the associated ladder operator do not exist there.
    """


class DegenerateConstraintError(NCTrapError):
    """The constraint matrix is singular, so Dirac brackets are undefined."""


class StructuralError(NCTrapError):
    """Input does not have the structure an operation is specialized for."""


class ConsistencyError(NCTrapError):
    """Two independent evaluation routes disagree beyond tolerance."""


class InsufficientTruncationError(NCTrapError):
    """The truncated Fock basis cannot resolve the requested states."""

    def __init__(self, message, suggested_n=None):
        super().__init__(message)
        self.suggested_n = suggested_n


class DimensionCapError(NCTrapError):
    """Requested Fock basis exceeds the configured dimension cap."""


class ModelValidityError(NCTrapError):
    """Inputs violate an assumption of a simplified physical model."""
