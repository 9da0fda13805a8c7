"""Exception hierarchy shared by every module."""


class SchurSimError(Exception):
    """Base class for all library errors."""


class DomainError(SchurSimError, ValueError):
    """Input is outside the mathematical domain of an operation."""


class InvalidSpin(DomainError):
    pass


class TriangleViolation(DomainError):
    pass


class InvalidQuantumNumbers(DomainError):
    pass


class InvalidLabel(DomainError):
    pass


class LengthMismatch(DomainError):
    pass


class PhaseNotUnit(DomainError):
    pass


class ZeroConditioning(DomainError):
    pass


class InvalidParameters(DomainError):
    pass


class InvalidCircuit(DomainError):
    pass


class InvalidTransposition(DomainError):
    pass


class DomainTooLarge(SchurSimError):
    """A requested enumeration or dense construction exceeds its size cap."""


class BoundViolation(SchurSimError, AssertionError):
    """An estimator sample fell outside [-1, 1]; signals an upstream bug."""


class RacahTermCountError(SchurSimError, AssertionError):
    """The Racah sum visited a number of terms other than nu + 1."""
