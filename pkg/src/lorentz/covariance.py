"""
Lorentz Covariance
Boost matrix, fundamental su(1,1) realization, internal-symmetry residual and polarization brackets
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from src.errors import InvalidCutoffError, InvalidMarginError, InvalidParameterError, ValidationError
from src.fock.core import (
    TruncatedOperator,
    evolve_unitary,
    identity,
    make_ladder,
    span_residual,
)
from src.fock.su11 import make_su11_hp

logger = logging.getLogger(__name__)


class ProbeAlgebra(str, Enum):
    SU11 = "su11"
    WEYL = "weyl"


def _probe_algebra(tag) -> ProbeAlgebra:
    try:
        return ProbeAlgebra(tag)
    except ValueError:
        raise InvalidParameterError(f"invalid algebra: expected su11 or weyl, got {tag!r}")


@dataclass(frozen=True, eq=False)
class BoostMatrix:
    """[[g, i sqrt(g^2-1)], [-i sqrt(g^2-1), g]]: Hermitian, orthogonal, not unitary"""

    gamma: float
    entries: np.ndarray

    def determinant(self) -> complex:
        return complex(np.linalg.det(self.entries))

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def orthogonality_residual(self) -> float:
        return float(np.max(np.abs(self.entries @ self.entries.T - np.eye(2))))

    def unitarity_defect(self) -> float:
        """||M M^dag - 1||_max, equal to 2 gamma sqrt(gamma^2 - 1)"""
        return float(np.max(np.abs(self.entries @ self.entries.conj().T - np.eye(2))))


@dataclass(frozen=True, eq=False)
class Su11Fundamental:
    """Two-dimensional non-unitary realization of su(1,1) ~ so(1,2)"""

    k1: np.ndarray
    k2: np.ndarray
    k3: np.ndarray

    @property
    def k_plus(self) -> np.ndarray:
        return self.k1 + 1j * self.k2

    @property
    def k_minus(self) -> np.ndarray:
        return self.k1 - 1j * self.k2

    def relation_residuals(self) -> Dict[str, float]:
        def bracket(x, y):
            return x @ y - y @ x

        return {
            "k1_k2": float(np.max(np.abs(bracket(self.k1, self.k2) + 1j * self.k3))),
            "k3_k1": float(np.max(np.abs(bracket(self.k3, self.k1) - 1j * self.k2))),
            "k2_k3": float(np.max(np.abs(bracket(self.k2, self.k3) - 1j * self.k1))),
        }


@dataclass(frozen=True, eq=False)
class WaveVector:
    k: np.ndarray
    v: np.ndarray
    c: float = 1.0

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float).reshape(3)
        v = np.asarray(self.v, dtype=float).reshape(3)
        if not self.c > 0:
            raise InvalidParameterError(f"invalid speed of light: need c > 0, got {self.c}")
        speed = float(np.linalg.norm(v))
        if speed >= self.c:
            raise InvalidParameterError(f"invalid velocity: need |v| < c, got |v|={speed} c={self.c}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "v", v)

    @property
    def speed(self) -> float:
        return float(np.linalg.norm(self.v))

    @property
    def gamma(self) -> float:
        return lorentz_gamma(self.speed, self.c)

    @property
    def frequency(self) -> float:
        return self.c * float(np.linalg.norm(self.k))


@dataclass
class SymmetryProbeConfig:
    """Configuration for the internal-symmetry conjugation test"""
    margin: int = 25
    pad: float = 2.0   # working cutoff spread factor, 0 disables padding
    extra: int = 40    # levels added on top of the padded cutoff
    min_cutoff: int = 40
    min_margin: int = 10


def lorentz_gamma(speed: float, c: float = 1.0) -> float:
    if not 0 <= abs(speed) < c:
        raise InvalidParameterError(f"invalid velocity: need |v| < c, got |v|={speed} c={c}")
    return 1.0 / math.sqrt(1.0 - (speed / c) ** 2)


def rapidity(gamma: float) -> float:
    """theta >= 0 with cosh(theta/2) = gamma, the parameter of exp_boost"""
    if gamma < 1:
        raise InvalidParameterError(f"invalid gamma: need gamma >= 1, got {gamma}")
    return 2.0 * math.acosh(gamma)


def boost_matrix(gamma: float) -> BoostMatrix:
    if gamma < 1:
        raise InvalidParameterError(f"invalid gamma: need gamma >= 1, got {gamma}")
    s = math.sqrt(gamma * gamma - 1.0)
    entries = np.array([[gamma, 1j * s], [-1j * s, gamma]], dtype=np.complex128)
    return BoostMatrix(gamma=float(gamma), entries=entries)


def su11_fundamental() -> Su11Fundamental:
    """k1 = [[0,1/2],[-1/2,0]], k2 = [[0,-i/2],[-i/2,0]], k3 = diag(1/2,-1/2)"""
    k1 = np.array([[0.0, 0.5], [-0.5, 0.0]], dtype=np.complex128)
    k2 = np.array([[0.0, -0.5j], [-0.5j, 0.0]], dtype=np.complex128)
    k3 = np.diag([0.5, -0.5]).astype(np.complex128)
    return Su11Fundamental(k1=k1, k2=k2, k3=k3)


def exp_boost(theta: float) -> np.ndarray:
    """exp(i theta (k+ + k-)/2) in the fundamental realization"""
    rep = su11_fundamental()
    return expm(1j * theta * (rep.k_plus + rep.k_minus) / 2)


def boost_modes(gamma: float, modes: Sequence[complex]) -> np.ndarray:
    """Apply the boost to mode amplitudes (a1, a2); |a1|^2 - |a2|^2 is invariant"""
    vec = np.asarray(modes, dtype=np.complex128).reshape(2)
    return boost_matrix(gamma).entries @ vec


def indefinite_norm(modes: Sequence[complex]) -> float:
    vec = np.asarray(modes, dtype=np.complex128).reshape(2)
    return float(abs(vec[0]) ** 2 - abs(vec[1]) ** 2)


def hermitian_elements(algebra: ProbeAlgebra, kappa: float, cutoff: int) -> List[TruncatedOperator]:
    """Hermitian spanning set: {K1, K2, K3, 1} for su11, {1, q, p, n} for weyl"""
    algebra = _probe_algebra(algebra)
    if algebra is ProbeAlgebra.SU11:
        g = make_su11_hp(kappa, cutoff)
        return [g.k_one, g.k_two, g.k_three, identity(cutoff)]
    a, a_dag, number = make_ladder(cutoff)
    return [identity(cutoff), (a + a_dag) / math.sqrt(2), 1j * (a_dag - a) / math.sqrt(2), number]


def algebra_basis(algebra: ProbeAlgebra, kappa: float, cutoff: int) -> List[TruncatedOperator]:
    algebra = _probe_algebra(algebra)
    if algebra is ProbeAlgebra.SU11:
        g = make_su11_hp(kappa, cutoff)
        return [g.k_plus, g.k_minus, g.k_three, identity(cutoff)]
    a, a_dag, number = make_ladder(cutoff)
    return [identity(cutoff), a, a_dag, number]


DEFAULT_PROBES = {
    ProbeAlgebra.SU11: (0.0, 0.0, 1.0, 0.0),
    ProbeAlgebra.WEYL: (0.0, 0.0, 0.0, 1.0),
}


def random_hermitian_probe(rng: np.random.Generator, size: int = 4) -> np.ndarray:
    """Unit-norm real coefficients over the Hermitian spanning set"""
    coefficients = rng.standard_normal(size)
    return coefficients / np.linalg.norm(coefficients)


def _working_cutoff(theta: float, cutoff: int, config: SymmetryProbeConfig, margin: int) -> int:
    spread = math.ceil(config.pad * math.exp(abs(theta)) * (cutoff - margin))
    return max(cutoff, spread) + config.extra


def conjugated_probe(
    theta: float,
    algebra: ProbeAlgebra,
    kappa: float = 0.5,
    cutoff: int = 80,
    margin: Optional[int] = None,
    probe: Optional[Sequence[float]] = None,
    config: Optional[SymmetryProbeConfig] = None,
) -> TruncatedOperator:
    """U g U^dag with U = exp(i theta K1), restricted to the first ``cutoff`` levels"""
    config = config or SymmetryProbeConfig()
    algebra = _probe_algebra(algebra)
    margin = config.margin if margin is None else margin
    if cutoff < config.min_cutoff:
        raise InvalidCutoffError(f"invalid cutoff: need cutoff >= {config.min_cutoff}, got {cutoff}")
    if not config.min_margin <= margin < cutoff:
        raise InvalidMarginError(f"invalid margin: need {config.min_margin} <= margin < {cutoff}, got {margin}")
    coefficients = DEFAULT_PROBES[algebra] if probe is None else tuple(probe)
    if len(coefficients) != 4:
        raise ValidationError(f"probe needs 4 coefficients, got {len(coefficients)}")

    work = _working_cutoff(theta, cutoff, config, margin)
    generator = make_su11_hp(kappa, work).k_one
    unitary = evolve_unitary(generator, -theta)
    elements = hermitian_elements(algebra, kappa, work)
    g = elements[0] * float(coefficients[0])
    for c, element in zip(coefficients[1:], elements[1:]):
        g = g + float(c) * element
    conjugated = unitary @ g @ unitary.adjoint()
    logger.debug(f"Conjugated {algebra.value} probe at theta={theta} on working cutoff {work}")
    return TruncatedOperator(conjugated.entries[:cutoff, :cutoff])


def internal_symmetry_residual(
    theta: float,
    algebra: ProbeAlgebra,
    kappa: float = 0.5,
    cutoff: int = 80,
    margin: Optional[int] = None,
    probe: Optional[Sequence[float]] = None,
    config: Optional[SymmetryProbeConfig] = None,
) -> float:
    """Distance of the boosted probe from its algebra's span on the interior block"""
    config = config or SymmetryProbeConfig()
    margin = config.margin if margin is None else margin
    conjugated = conjugated_probe(theta, algebra, kappa, cutoff, margin, probe, config)
    residual = span_residual(conjugated, algebra_basis(algebra, kappa, cutoff), margin)
    logger.info(f"Internal-symmetry residual {_probe_algebra(algebra).value} theta={theta}: {residual:.3e}")
    return residual


def boosted_wavevector(w: WaveVector) -> np.ndarray:
    """k' = k + ((g^2-1)/g) w_k [1 + sqrt((g-1)/(g+1)) cos(k.v)] v/v^2, taken literally"""
    speed = w.speed
    if speed == 0.0:
        return w.k.copy()
    gamma = w.gamma
    prefactor = (gamma * gamma - 1.0) / gamma * w.frequency
    bracket = 1.0 + math.sqrt((gamma - 1.0) / (gamma + 1.0)) * math.cos(float(np.dot(w.k, w.v)))
    return w.k + prefactor * bracket * w.v / speed ** 2


Coordinate = Callable[[float, float], float]


def _polarization_coordinates() -> Dict[str, Coordinate]:
    return {
        "x": lambda r, phi: r * math.cos(phi),
        "y": lambda r, phi: r * math.sin(phi),
        "z": lambda r, phi: r,
    }


def _analytic_gradients(r: float, phi: float) -> Dict[str, Tuple[float, float]]:
    return {
        "x": (math.cos(phi), -r * math.sin(phi)),
        "y": (math.sin(phi), r * math.cos(phi)),
        "z": (1.0, 0.0),
    }


def _central_gradient(f: Coordinate, r: float, phi: float, h: float) -> Tuple[float, float]:
    d_r = (f(r + h, phi) - f(r - h, phi)) / (2 * h)
    d_phi = (f(r, phi + h) - f(r, phi - h)) / (2 * h)
    return d_r, d_phi


def polarization_pb_residuals(r: float, phi: float, h: Optional[float] = 1e-4) -> Tuple[float, float, float]:
    """|{Rx,Ry}-Rz|, |{Rz,Rx}+Ry|, |{Rz,Ry}-Rx| with {f,g} = f_r g_phi - f_phi g_r; h=None is exact"""
    if not r > 0:
        raise InvalidParameterError(f"invalid radius: need r > 0, got {r}")
    coords = _polarization_coordinates()
    if h is None:
        grads = _analytic_gradients(r, phi)
    else:
        if not h > 0:
            raise InvalidParameterError(f"invalid step: need h > 0, got {h}")
        grads = {name: _central_gradient(f, r, phi, h) for name, f in coords.items()}

    def bracket(f: str, g: str) -> float:
        return grads[f][0] * grads[g][1] - grads[f][1] * grads[g][0]

    x, y, z = (coords[name](r, phi) for name in ("x", "y", "z"))
    return (
        abs(bracket("x", "y") - z),
        abs(bracket("z", "x") + y),
        abs(bracket("z", "y") - x),
    )
