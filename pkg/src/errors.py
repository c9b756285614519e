"""
Exception Hierarchy
Errors raised by the operator, statistics, covariance and dynamics modules
"""
from typing import Optional


class BosonAlgError(Exception):
    """Base exception for the toolkit"""
    pass


class ValidationError(BosonAlgError, ValueError):
    """A documented precondition was violated by the caller"""
    pass


class InvalidCutoffError(ValidationError):
    """Fock cutoff below the admissible minimum"""
    pass


class CutoffMismatchError(ValidationError):
    """Binary operation on operators or states with different cutoffs"""
    pass


class InvalidRepresentationError(ValidationError):
    """Bargmann index outside the admissible discrete series"""
    pass


class HermiticityError(ValidationError):
    """Operator expected to be Hermitian is not"""
    pass


class InvalidMarginError(ValidationError):
    """Interior-block margin does not fit inside the cutoff"""
    pass


class EmptyBasisError(ValidationError):
    """Span residual requested against an empty basis"""
    pass


class InvalidParameterError(ValidationError):
    """Physical parameter outside its admissible range"""
    pass


class NumericalGuardError(BosonAlgError, ArithmeticError):
    """A numerical guard tripped during a computation"""

    guard: str = "numerical-guard"

    def __init__(self, message: str, guard: Optional[str] = None):
        super().__init__(message)
        if guard is not None:
            self.guard = guard


class TailMassGuardError(NumericalGuardError):
    """Coherent-state tail beyond the cutoff is too heavy"""
    guard = "tail-mass"


class MemoryGuardError(NumericalGuardError):
    """Requested tensor product state would not fit the amplitude budget"""
    guard = "memory"


class OverflowGuardError(NumericalGuardError):
    """Argument large enough to overflow a series evaluation"""
    guard = "overflow"


class InconsistencyError(NumericalGuardError):
    """State norm or support inconsistent with its declared particle number"""
    guard = "inconsistency"


class IdentityGuardError(NumericalGuardError):
    """An identity asserted on the interior block failed"""
    guard = "identity"
