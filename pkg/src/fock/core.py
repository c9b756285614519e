"""
Truncated Fock Space Core
Dense complex linear algebra over the basis |0>, ..., |N-1>
"""
import logging
from dataclasses import dataclass
from numbers import Number
from typing import Sequence, Tuple, Union

import numpy as np

from src.errors import (
    CutoffMismatchError,
    EmptyBasisError,
    HermiticityError,
    InvalidCutoffError,
    InvalidMarginError,
    ValidationError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerance hierarchy shared by modules and tests"""
    constructor: float = 1e-12  # identities that hold by construction
    product: float = 1e-10      # single derived matrix products
    evolved: float = 1e-8       # quantities produced by time evolution
    hermitian: float = 1e-10    # hermiticity check before exponentiation
    unitary: float = 1e-9       # ||U^dag U - 1||_max after evolution


TOLERANCES = Tolerances()

Scalar = Union[int, float, complex, np.number]


def _as_matrix(entries) -> np.ndarray:
    matrix = np.array(entries, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"operator entries must be a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] < 2:
        raise InvalidCutoffError(f"invalid cutoff: need cutoff >= 2, got {matrix.shape[0]}")
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """Dense operator on a Fock space cut off at occupation N-1"""

    entries: np.ndarray

    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_matrix(self.entries))

    @property
    def cutoff(self) -> int:
        return self.entries.shape[0]

    def _check(self, other: "TruncatedOperator") -> None:
        if other.cutoff != self.cutoff:
            raise CutoffMismatchError(
                f"cutoff mismatch: {self.cutoff} vs {other.cutoff}"
            )

    def adjoint(self) -> "TruncatedOperator":
        return TruncatedOperator(self.entries.conj().T)

    def __add__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        if not isinstance(other, TruncatedOperator):
            return NotImplemented
        self._check(other)
        return TruncatedOperator(self.entries + other.entries)

    def __sub__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        if not isinstance(other, TruncatedOperator):
            return NotImplemented
        self._check(other)
        return TruncatedOperator(self.entries - other.entries)

    def __neg__(self) -> "TruncatedOperator":
        return TruncatedOperator(-self.entries)

    def __mul__(self, scalar: Scalar) -> "TruncatedOperator":
        if not isinstance(scalar, Number):
            return NotImplemented
        return TruncatedOperator(scalar * self.entries)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "TruncatedOperator":
        if not isinstance(scalar, Number):
            return NotImplemented
        return TruncatedOperator(self.entries / scalar)

    def __matmul__(self, other):
        if isinstance(other, TruncatedOperator):
            self._check(other)
            return TruncatedOperator(self.entries @ other.entries)
        if isinstance(other, FockState):
            return apply(self, other)
        return NotImplemented

    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries).copy()

    def is_diagonal(self) -> bool:
        off = self.entries - np.diag(np.diag(self.entries))
        return not np.any(off)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))


@dataclass(frozen=True, eq=False)
class FockState:
    """Amplitude vector over the truncated Fock basis"""

    amplitudes: np.ndarray

    def __post_init__(self):
        vec = np.array(self.amplitudes, dtype=np.complex128)
        if vec.ndim != 1 or vec.shape[0] < 1:
            raise ValidationError(f"state amplitudes must be a non-empty vector, got shape {vec.shape}")
        vec.setflags(write=False)
        object.__setattr__(self, "amplitudes", vec)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "FockState":
        norm = self.norm()
        if norm == 0.0:
            raise ValidationError("cannot normalize the zero vector")
        return FockState(self.amplitudes / norm)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class InteriorBlock:
    """Restriction to rows/columns 0..N-1-margin, away from the truncation edge"""

    margin: int

    def __post_init__(self):
        if self.margin < 0:
            raise InvalidMarginError(f"invalid margin: need margin >= 0, got {self.margin}")

    def size(self, cutoff: int) -> int:
        if self.margin >= cutoff:
            raise InvalidMarginError(f"invalid margin: need margin < cutoff, got {self.margin} >= {cutoff}")
        return cutoff - self.margin

    def restrict(self, op: Union[TruncatedOperator, np.ndarray]) -> np.ndarray:
        matrix = op.entries if isinstance(op, TruncatedOperator) else np.asarray(op)
        keep = self.size(matrix.shape[0])
        return matrix[:keep, :keep]

    def max_abs(self, op: Union[TruncatedOperator, np.ndarray]) -> float:
        block = self.restrict(op)
        return float(np.max(np.abs(block))) if block.size else 0.0


def interior(op: TruncatedOperator, margin: int) -> np.ndarray:
    """Interior block of ``op`` with the given margin"""
    return InteriorBlock(margin).restrict(op)


def interior_residual(op: TruncatedOperator, margin: int) -> float:
    """Max-abs entry of the interior block; the standard identity residual"""
    return InteriorBlock(margin).max_abs(op)


def _check_cutoff(cutoff: int) -> None:
    if int(cutoff) != cutoff or cutoff < 2:
        raise InvalidCutoffError(f"invalid cutoff: need integer cutoff >= 2, got {cutoff}")


def identity(cutoff: int) -> TruncatedOperator:
    _check_cutoff(cutoff)
    return TruncatedOperator(np.eye(cutoff))


def basis_state(n: int, cutoff: int) -> FockState:
    """Number state |n> in a space of the given cutoff"""
    if not 0 <= n < cutoff:
        raise ValidationError(f"occupation {n} outside basis 0..{cutoff - 1}")
    vec = np.zeros(cutoff, dtype=np.complex128)
    vec[n] = 1.0
    return FockState(vec)


def make_ladder(cutoff: int) -> Tuple[TruncatedOperator, TruncatedOperator, TruncatedOperator]:
    """Annihilation, creation and number operators with a|n> = sqrt(n)|n-1>"""
    _check_cutoff(cutoff)
    a = np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1)
    lowering = TruncatedOperator(a)
    raising = lowering.adjoint()
    number = raising @ lowering
    logger.debug(f"Built ladder operators at cutoff {cutoff}")
    return lowering, raising, number


def adjoint(op: TruncatedOperator) -> TruncatedOperator:
    return op.adjoint()


def commutator(a: TruncatedOperator, b: TruncatedOperator) -> TruncatedOperator:
    """AB - BA"""
    return a @ b - b @ a


def is_hermitian(op: TruncatedOperator, tol: float = TOLERANCES.hermitian) -> bool:
    return float(np.max(np.abs(op.entries - op.entries.conj().T))) <= tol


def diagonal_power(op: TruncatedOperator, power: float) -> TruncatedOperator:
    """Entrywise power of a positive diagonal operator"""
    if not op.is_diagonal():
        raise ValidationError("diagonal_power requires a diagonal operator")
    diag = op.diagonal()
    if np.any(np.abs(diag.imag) > 0) or np.any(diag.real <= 0):
        raise ValidationError("diagonal_power requires a strictly positive real diagonal")
    return TruncatedOperator(np.diag(diag.real ** power))


def evolve_unitary(hamiltonian: TruncatedOperator, t: float) -> TruncatedOperator:
    """exp(-iHt) through the eigendecomposition of a Hermitian H"""
    skew = float(np.max(np.abs(hamiltonian.entries - hamiltonian.entries.conj().T)))
    if skew > TOLERANCES.hermitian:
        raise HermiticityError(f"hermiticity: operator deviates from its adjoint by {skew:.3e}")
    hermitian_part = 0.5 * (hamiltonian.entries + hamiltonian.entries.conj().T)
    energies, vectors = np.linalg.eigh(hermitian_part)
    phases = np.exp(-1j * energies * t)
    unitary = (vectors * phases) @ vectors.conj().T
    return TruncatedOperator(unitary)


def span_residual(
    x: TruncatedOperator,
    basis: Sequence[TruncatedOperator],
    margin: int,
) -> float:
    """Relative Frobenius distance of X from the span of ``basis`` on the interior block"""
    if not basis:
        raise EmptyBasisError("empty basis: span residual needs at least one element")
    for element in basis:
        x._check(element)
    block = InteriorBlock(margin)
    target = block.restrict(x).reshape(-1)
    norm = float(np.linalg.norm(target))
    if norm == 0.0:
        return 0.0
    design = np.column_stack([block.restrict(element).reshape(-1) for element in basis])
    coefficients, *_ = np.linalg.lstsq(design, target, rcond=None)
    remainder = target - design @ coefficients
    return float(np.linalg.norm(remainder) / norm)


def tensor_product(a: TruncatedOperator, b: TruncatedOperator) -> TruncatedOperator:
    """Kronecker product; index (i, j) fuses to i * dim(b) + j"""
    return TruncatedOperator(np.kron(a.entries, b.entries))


def embed(op: TruncatedOperator, site: int, modes: int) -> TruncatedOperator:
    """Place ``op`` on slot ``site`` (0-based) of an m-mode product space"""
    if not 0 <= site < modes:
        raise ValidationError(f"site {site} outside 0..{modes - 1}")
    eye = np.eye(op.cutoff)
    full = np.array([[1.0]])
    for slot in range(modes):
        full = np.kron(full, op.entries if slot == site else eye)
    return TruncatedOperator(full)


def apply(op: TruncatedOperator, state: FockState) -> FockState:
    if op.cutoff != state.cutoff:
        raise CutoffMismatchError(f"cutoff mismatch: operator {op.cutoff} vs state {state.cutoff}")
    return FockState(op.entries @ state.amplitudes)


def expectation(state: FockState, op: TruncatedOperator) -> complex:
    """<psi|A|psi> (the state is not renormalized)"""
    image = apply(op, state)
    return complex(np.vdot(state.amplitudes, image.amplitudes))


def ccr_trace_defect(cutoff: int) -> float:
    """tr([a, a^dag]) - tr(1); equals -N since a commutator is traceless"""
    a, a_dag, _ = make_ladder(cutoff)
    defect = np.trace(commutator(a, a_dag).entries) - cutoff
    return float(defect.real)

