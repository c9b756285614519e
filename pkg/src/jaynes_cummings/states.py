"""
Field and Atom States
Glauber and Barut-Girardello coherent states, I0 series and atom-field product states
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import gammaln

from src.errors import InconsistencyError, OverflowGuardError, TailMassGuardError, ValidationError
from src.fock.core import FockState

logger = logging.getLogger(__name__)

TAIL_MASS_LIMIT = 1e-10
BESSEL_ARGUMENT_LIMIT = 700.0


class AtomicLevel(str, Enum):
    G = "g"
    E = "e"

    @property
    def index(self) -> int:
        return 0 if self is AtomicLevel.G else 1


@dataclass(frozen=True, eq=False)
class AtomFieldState:
    """Amplitudes over Fock x {g, e}, index 2n + s with s = 0 for g and 1 for e"""

    amplitudes: np.ndarray

    def __post_init__(self):
        vec = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if vec.shape[0] < 4 or vec.shape[0] % 2:
            raise ValidationError(f"atom-field state needs an even length >= 4, got {vec.shape[0]}")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-10:
            raise InconsistencyError(f"inconsistency: atom-field state norm {norm:.12g}, expected 1")
        vec.setflags(write=False)
        object.__setattr__(self, "amplitudes", vec)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.shape[0] // 2

    def level(self, atom: AtomicLevel) -> np.ndarray:
        """Field amplitudes paired with the given atomic level"""
        return self.amplitudes[AtomicLevel(atom).index::2]

    def inversion(self) -> float:
        """<S_z> = (P_e - P_g) / 2"""
        excited = float(np.sum(np.abs(self.level(AtomicLevel.E)) ** 2))
        ground = float(np.sum(np.abs(self.level(AtomicLevel.G)) ** 2))
        return 0.5 * (excited - ground)

    def mean_photons(self) -> float:
        occupations = np.repeat(np.arange(self.cutoff), 2)
        return float(np.sum(occupations * np.abs(self.amplitudes) ** 2))


def _check_tail(label: str, parameter: complex, cutoff: int) -> None:
    if not 3.0 * abs(parameter) ** 2 < cutoff:
        raise TailMassGuardError(
            f"tail-mass: {label} state needs 3|z|^2 < cutoff, got |z|={abs(parameter):.6g}, cutoff={cutoff}"
        )


def _log_series_state(parameter: complex, cutoff: int, factorial_power: float) -> np.ndarray:
    """Unnormalized amplitudes z^n / (n!)^power through log-magnitudes"""
    amplitudes = np.zeros(cutoff, dtype=np.complex128)
    if parameter == 0:
        amplitudes[0] = 1.0
        return amplitudes
    n = np.arange(cutoff)
    log_magnitude = n * math.log(abs(parameter)) - factorial_power * gammaln(n + 1)
    phase = n * np.angle(parameter)
    return np.exp(log_magnitude + 1j * phase)


def _finish(label: str, amplitudes: np.ndarray, full_norm_sq: float) -> FockState:
    kept = float(np.sum(np.abs(amplitudes) ** 2))
    tail = max(0.0, 1.0 - kept / full_norm_sq)
    if tail > TAIL_MASS_LIMIT:
        raise TailMassGuardError(f"tail-mass: {label} state loses {tail:.3e} beyond the cutoff")
    logger.debug(f"{label} state at cutoff {amplitudes.shape[0]}: truncated tail mass {tail:.3e}")
    return FockState(amplitudes / math.sqrt(kept))


def glauber_state(alpha: complex, cutoff: int) -> FockState:
    """Coherent state of h(1): amplitudes alpha^n / sqrt(n!)"""
    alpha = complex(alpha)
    _check_tail("Glauber", alpha, cutoff)
    amplitudes = _log_series_state(alpha, cutoff, 0.5)
    return _finish("Glauber", amplitudes, math.exp(abs(alpha) ** 2))


def barut_girardello_state(eta: complex, cutoff: int) -> FockState:
    """K- eigenstate for kappa = 1/2: amplitudes eta^n / n!, normalized by I0(2|eta|)^(-1/2)"""
    eta = complex(eta)
    _check_tail("Barut-Girardello", eta, cutoff)
    amplitudes = _log_series_state(eta, cutoff, 1.0)
    return _finish("Barut-Girardello", amplitudes, bessel_i0(2.0 * abs(eta)).real)


def bessel_i0(z: complex) -> complex:
    """I0(z) = sum_k (z/2)^(2k) / (k!)^2"""
    z = complex(z)
    if abs(z) >= BESSEL_ARGUMENT_LIMIT:
        raise OverflowGuardError(f"overflow: I0 series needs |z| < {BESSEL_ARGUMENT_LIMIT:g}, got {abs(z):.6g}")
    quarter_sq = (z / 2.0) ** 2
    term = 1.0 + 0.0j
    total = term
    k = 0
    while True:
        k += 1
        term = term * quarter_sq / (k * k)
        total += term
        if k > abs(z) / 2.0 and abs(term) <= 1e-17 * abs(total):
            break
    return total


def product_state(field: FockState, atom: AtomicLevel) -> AtomFieldState:
    """|field> x |atom>"""
    atomic = np.zeros(2, dtype=np.complex128)
    atomic[AtomicLevel(atom).index] = 1.0
    return AtomFieldState(np.kron(field.normalized().amplitudes, atomic))
