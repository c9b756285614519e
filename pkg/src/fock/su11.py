"""
su(1,1) Generators
Holstein-Primakoff realization of the positive discrete series on Fock space
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Union

import numpy as np

from src.errors import InvalidRepresentationError
from src.fock.core import (
    TruncatedOperator,
    commutator,
    identity,
    interior_residual,
    make_ladder,
)

logger = logging.getLogger(__name__)

KappaLike = Union[int, float, Fraction]


def validate_kappa(kappa: KappaLike) -> float:
    """Accept kappa in {1/4, 1/2, 1, 3/2, 2, ...}; anything else is rejected"""
    try:
        value = float(kappa)
    except (TypeError, ValueError):
        raise InvalidRepresentationError(f"invalid representation: kappa={kappa!r} is not a number")
    if abs(value - 0.25) < 1e-12:
        return 0.25
    doubled = 2.0 * value
    if value > 0 and abs(doubled - round(doubled)) < 1e-12:
        return round(doubled) / 2.0
    raise InvalidRepresentationError(
        f"invalid representation: kappa={kappa} not in {{1/4, 1/2, 1, 3/2, ...}}"
    )


@dataclass(frozen=True, eq=False)
class SU11Generators:
    """K+, K-, K3 of D+_kappa truncated at a common cutoff"""

    kappa: float
    k_plus: TruncatedOperator
    k_minus: TruncatedOperator
    k_three: TruncatedOperator

    @property
    def cutoff(self) -> int:
        return self.k_three.cutoff

    @property
    def k_one(self) -> TruncatedOperator:
        return (self.k_plus + self.k_minus) / 2

    @property
    def k_two(self) -> TruncatedOperator:
        return (self.k_plus - self.k_minus) / 2j


def make_su11_hp(kappa: KappaLike, cutoff: int) -> SU11Generators:
    """K3 = n + kappa, K- = (K+)^dag = sqrt(n + 2 kappa) a"""
    kappa = validate_kappa(kappa)
    a, _, _ = make_ladder(cutoff)
    occupations = np.arange(cutoff, dtype=float)
    root = np.diag(np.sqrt(occupations + 2.0 * kappa))
    k_minus = TruncatedOperator(root @ a.entries)
    k_plus = k_minus.adjoint()
    k_three = TruncatedOperator(np.diag(occupations + kappa))
    logger.debug(f"Built Holstein-Primakoff generators kappa={kappa} cutoff={cutoff}")
    return SU11Generators(kappa=kappa, k_plus=k_plus, k_minus=k_minus, k_three=k_three)


def casimir(g: SU11Generators) -> TruncatedOperator:
    """K3^2 - (K+K- + K-K+)/2"""
    return g.k_three @ g.k_three - (g.k_plus @ g.k_minus + g.k_minus @ g.k_plus) / 2


def casimir_value(kappa: KappaLike) -> float:
    kappa = validate_kappa(kappa)
    return kappa * (kappa - 1.0)


def relation_residuals(g: SU11Generators, margin: int = 2) -> Dict[str, float]:
    """Interior residuals of [K3,K+] = K+, [K3,K-] = -K-, [K-,K+] = 2K3"""
    return {
        "k3_kplus": interior_residual(commutator(g.k_three, g.k_plus) - g.k_plus, margin),
        "k3_kminus": interior_residual(commutator(g.k_three, g.k_minus) + g.k_minus, margin),
        "kminus_kplus": interior_residual(commutator(g.k_minus, g.k_plus) - 2 * g.k_three, margin),
    }


def casimir_residual(g: SU11Generators, margin: int = 2) -> float:
    expected = casimir_value(g.kappa) * identity(g.cutoff)
    return interior_residual(casimir(g) - expected, margin)
