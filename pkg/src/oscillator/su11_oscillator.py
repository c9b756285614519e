"""
su(1,1) Oscillator Constructions
Schwinger generators, linear observables, inverse Holstein-Primakoff ladder and the generalized bracket
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

import numpy as np

from src.errors import IdentityGuardError, InvalidCutoffError, InvalidParameterError
from src.fock.core import (
    TOLERANCES,
    TruncatedOperator,
    commutator,
    diagonal_power,
    identity,
    interior_residual,
    make_ladder,
)
from src.fock.su11 import SU11Generators, casimir_value

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)
SCHWINGER_CASIMIR = -3.0 / 16.0


class ObservableSource(str, Enum):
    LINEAR_IN_K = "linear-in-K"
    INVERSE_HP = "inverse-hp"


@dataclass(frozen=True, eq=False)
class OscillatorPair:
    """Canonical pair q = (a^dag + a)/sqrt2, p = i(a^dag - a)/sqrt2 and its ladder"""

    a: TruncatedOperator
    q: TruncatedOperator
    p: TruncatedOperator

    @property
    def cutoff(self) -> int:
        return self.a.cutoff

    @classmethod
    def from_lowering(cls, a: TruncatedOperator) -> "OscillatorPair":
        a_dag = a.adjoint()
        return cls(a=a, q=(a_dag + a) / SQRT2, p=1j * (a_dag - a) / SQRT2)

    def canonical_residual(self, margin: int = 2) -> float:
        """Interior max-abs of [q,p] - i"""
        return interior_residual(commutator(self.q, self.p) - 1j * identity(self.cutoff), margin)


@dataclass(frozen=True, eq=False)
class SU11Observables:
    q: TruncatedOperator
    p: TruncatedOperator
    h: TruncatedOperator
    source: ObservableSource
    kappa: float


@dataclass(frozen=True, eq=False)
class SchwingerGenerators:
    """K1 = (p^2-q^2)/4, K2 = (qp+pq)/4, K3 = (p^2+q^2)/4 and K+- = K1 +- iK2"""

    k_one: TruncatedOperator
    k_two: TruncatedOperator
    k_three: TruncatedOperator

    @property
    def cutoff(self) -> int:
        return self.k_three.cutoff

    @property
    def k_plus(self) -> TruncatedOperator:
        return self.k_one + 1j * self.k_two

    @property
    def k_minus(self) -> TruncatedOperator:
        return self.k_one - 1j * self.k_two


@dataclass(frozen=True, eq=False)
class InverseHPResult:
    pair: OscillatorPair
    h: TruncatedOperator
    kappa: float

    def observables(self) -> SU11Observables:
        return SU11Observables(
            q=self.pair.q, p=self.pair.p, h=self.h, source=ObservableSource.INVERSE_HP, kappa=self.kappa
        )


def oscillator_pair(cutoff: int) -> OscillatorPair:
    a, _, _ = make_ladder(cutoff)
    return OscillatorPair.from_lowering(a)


def schwinger_generators(cutoff: int) -> SchwingerGenerators:
    """Single-boson su(1,1) realization quadratic in q and p"""
    if cutoff < 6:
        raise InvalidCutoffError(f"invalid cutoff: Schwinger generators need cutoff >= 6, got {cutoff}")
    pair = oscillator_pair(cutoff)
    q2 = pair.q @ pair.q
    p2 = pair.p @ pair.p
    generators = SchwingerGenerators(
        k_one=(p2 - q2) / 4,
        k_two=(pair.q @ pair.p + pair.p @ pair.q) / 4,
        k_three=(p2 + q2) / 4,
    )
    logger.debug(f"Built Schwinger generators at cutoff {cutoff}")
    return generators


def schwinger_casimir(s: SchwingerGenerators) -> TruncatedOperator:
    return s.k_three @ s.k_three - s.k_one @ s.k_one - s.k_two @ s.k_two


def schwinger_residuals(s: SchwingerGenerators, margin: int = 4) -> Dict[str, float]:
    """Interior residuals of the three su(1,1) relations and the Casimir -3/16"""
    casimir_target = SCHWINGER_CASIMIR * identity(s.cutoff)
    return {
        "k1_k2": interior_residual(commutator(s.k_one, s.k_two) + 1j * s.k_three, margin),
        "k3_k1": interior_residual(commutator(s.k_three, s.k_one) - 1j * s.k_two, margin),
        "k2_k3": interior_residual(commutator(s.k_two, s.k_three) - 1j * s.k_one, margin),
        "casimir": interior_residual(schwinger_casimir(s) - casimir_target, margin),
    }


def schwinger_parity_spectra(s: SchwingerGenerators, margin: int = 2) -> Tuple[np.ndarray, np.ndarray]:
    """K3 eigenvalues on even and odd Fock states, below the truncation margin"""
    diag = s.k_three.diagonal().real[: s.cutoff - margin]
    return diag[0::2], diag[1::2]


def su11_observables_linear(g: SU11Generators) -> SU11Observables:
    """Q = (K+ + K-)/sqrt2, P = i(K+ - K-)/sqrt2, H = K3"""
    return SU11Observables(
        q=(g.k_plus + g.k_minus) / SQRT2,
        p=1j * (g.k_plus - g.k_minus) / SQRT2,
        h=g.k_three,
        source=ObservableSource.LINEAR_IN_K,
        kappa=g.kappa,
    )


def heisenberg_residuals(obs: SU11Observables, g: SU11Generators, margin: int = 4) -> Dict[str, float]:
    """Heisenberg pair, [Q,P] = 2iK3 and (P^2+Q^2)/2 = K3^2 - kappa(kappa-1)"""
    energy = (obs.p @ obs.p + obs.q @ obs.q) / 2
    shifted = g.k_three @ g.k_three - casimir_value(g.kappa) * identity(g.cutoff)
    return {
        "h_q": interior_residual(commutator(obs.h, obs.q) + 1j * obs.p, margin),
        "h_p": interior_residual(commutator(obs.h, obs.p) - 1j * obs.q, margin),
        "q_p": interior_residual(commutator(obs.q, obs.p) - 2j * g.k_three, margin),
        "energy": interior_residual(energy - shifted, margin),
    }


def inverse_hp_ladder(g: SU11Generators, margin: int = 2) -> InverseHPResult:
    """a = (K3 + kappa)^(-1/2) K-, with H = a^dag a + 1/2 checked against K3 - kappa + 1/2"""
    eye = identity(g.cutoff)
    a = diagonal_power(g.k_three + g.kappa * eye, -0.5) @ g.k_minus
    pair = OscillatorPair.from_lowering(a)
    h = a.adjoint() @ a + 0.5 * eye
    mismatch = interior_residual(h - (g.k_three - (g.kappa - 0.5) * eye), margin)
    if mismatch > TOLERANCES.product:
        raise IdentityGuardError(f"identity: a^dag a + 1/2 differs from K3 - kappa + 1/2 by {mismatch:.3e}")
    logger.debug(f"Inverted Holstein-Primakoff map at kappa={g.kappa} cutoff={g.cutoff}")
    return InverseHPResult(pair=pair, h=h, kappa=g.kappa)


def generalized_bracket_check(g: SU11Generators, omega: float, margin: int = 2) -> float:
    """Interior max-abs of [q,p] - i(H/omega + kappa - 1/2) with H = omega(K3 - kappa + 1/2)"""
    if not omega > 0:
        raise InvalidParameterError(f"invalid frequency: need omega > 0, got {omega}")
    eye = identity(g.cutoff)
    q = (g.k_plus + g.k_minus) / 2
    p = 1j * (g.k_plus - g.k_minus) / 2
    h = omega * (g.k_three - (g.kappa - 0.5) * eye)
    target = 1j * (h / omega + (g.kappa - 0.5) * eye)
    return interior_residual(commutator(q, p) - target, margin)
