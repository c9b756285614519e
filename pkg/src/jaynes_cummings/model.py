"""
Jaynes-Cummings Model
Linear and su(1,1) intensity-dependent Hamiltonians on Fock x {g, e}
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from src.errors import InvalidCutoffError, InvalidParameterError
from src.fock.core import TruncatedOperator, make_ladder, tensor_product
from src.fock.su11 import make_su11_hp

logger = logging.getLogger(__name__)

# atomic operators in the {g, e} basis
SIGMA_Z = np.diag([-0.5, 0.5])
SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]])
TWO_LEVEL_IDENTITY = np.eye(2)


class Variant(str, Enum):
    """Coupling scheme: lambda a S+ (linear) or lambda0 K- S+ (su11)"""
    LINEAR = "linear"
    SU11 = "su11"


@dataclass(frozen=True)
class JCModel:
    variant: Variant = Variant.LINEAR
    omega: float = 1.0
    omega0: float = 1.0
    coupling: float = 1.0
    cutoff: int = 60

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not (self.omega > 0 and self.omega0 > 0):
            raise InvalidParameterError(
                f"invalid frequencies: need omega, omega0 > 0, got {self.omega}, {self.omega0}"
            )
        if isinstance(self.coupling, complex) and self.coupling.imag != 0:
            raise InvalidParameterError(f"invalid coupling: must be real, got {self.coupling}")
        object.__setattr__(self, "coupling", float(np.real(self.coupling)))
        if int(self.cutoff) != self.cutoff or self.cutoff < 2:
            raise InvalidCutoffError(f"invalid cutoff: need integer cutoff >= 2, got {self.cutoff}")

    @property
    def detuning(self) -> float:
        return self.omega - self.omega0

    @property
    def dimension(self) -> int:
        return 2 * self.cutoff

    def coupling_element(self, n) -> np.ndarray:
        """<n-1, e|H|n, g>: lambda sqrt(n) or lambda0 n"""
        n = np.asarray(n, dtype=float)
        if self.variant is Variant.LINEAR:
            return self.coupling * np.sqrt(n)
        return self.coupling * n


def build_hamiltonian(m: JCModel) -> TruncatedOperator:
    """omega n + omega0 S_z + (g K S+ + h.c.), basis index 2n + s"""
    if m.variant is Variant.LINEAR:
        lowering, _, number = make_ladder(m.cutoff)
        free_field = m.omega * number
    else:
        g = make_su11_hp(0.5, m.cutoff)
        lowering = g.k_minus
        free_field = m.omega * (g.k_three - 0.5 * TruncatedOperator(np.eye(m.cutoff)))

    field_identity = TruncatedOperator(np.eye(m.cutoff))
    sigma_z = TruncatedOperator(SIGMA_Z)
    sigma_plus = TruncatedOperator(SIGMA_PLUS)
    interaction = m.coupling * tensor_product(lowering, sigma_plus)
    hamiltonian = (
        tensor_product(free_field, TruncatedOperator(TWO_LEVEL_IDENTITY))
        + m.omega0 * tensor_product(field_identity, sigma_z)
        + interaction
        + interaction.adjoint()
    )
    logger.debug(f"Built {m.variant.value} Jaynes-Cummings Hamiltonian of dimension {m.dimension}")
    return hamiltonian


def rabi_frequency(m: JCModel, n) -> np.ndarray:
    """R_n = sqrt(Delta^2 + 4 g_n^2)"""
    element = m.coupling_element(n)
    return np.sqrt(m.detuning ** 2 + 4.0 * element ** 2)


def block_eigenvalues(m: JCModel, n: int) -> Tuple[float, float]:
    """(E-, E+) of the block {|n-1, e>, |n, g>}"""
    if n < 1:
        raise InvalidParameterError(f"invalid block: need n >= 1, got {n}; |0, g> is the -omega0/2 singlet")
    centre = n * m.omega - 0.5 * (m.detuning + m.omega0)
    half_split = 0.5 * float(rabi_frequency(m, n))
    return centre - half_split, centre + half_split


def dressed_spectrum(m: JCModel) -> np.ndarray:
    """All 2N eigenvalues of the truncated Hamiltonian, ascending"""
    blocks = np.arange(1, m.cutoff)
    centres = blocks * m.omega - 0.5 * (m.detuning + m.omega0)
    half_split = 0.5 * rabi_frequency(m, blocks)
    singlets = [-0.5 * m.omega0, m.omega * (m.cutoff - 1) + 0.5 * m.omega0]
    spectrum = np.concatenate([centres - half_split, centres + half_split, singlets])
    return np.sort(spectrum)


def rabi_period(m: JCModel, mean_photons: float) -> float:
    """Period of the inversion oscillation at the mean photon number, at resonance"""
    if not mean_photons > 0:
        raise InvalidParameterError(f"invalid mean photon number: need > 0, got {mean_photons}")
    if m.coupling == 0:
        raise InvalidParameterError("invalid coupling: the Rabi period needs a nonzero coupling")
    return 2.0 * math.pi / float(2.0 * abs(m.coupling_element(mean_photons)))
