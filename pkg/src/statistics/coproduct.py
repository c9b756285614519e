"""
Coproduct Statistics
Occupation distributions of n bosons spread over m modes by the coproduct creator
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.special import gammaln

from src.errors import InconsistencyError, InvalidParameterError, MemoryGuardError
from src.fock.core import make_ladder
from src.fock.su11 import make_su11_hp

logger = logging.getLogger(__name__)

EXACT_FACTORIAL_LIMIT = 20
AMPLITUDE_BUDGET = 10 ** 7
SUM_TOLERANCE = 1e-12


class Algebra(str, Enum):
    """Single-mode algebra whose creator builds the coproduct"""
    WEYL = "weyl"
    SU11 = "su11"

    @classmethod
    def _missing_(cls, value):
        if value == "su11-fundamental":
            return cls.SU11
        return None


@dataclass(frozen=True, order=True)
class Composition:
    """Occupation pattern (k_1, ..., k_m)"""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(k) for k in self.parts)
        if any(k < 0 for k in parts):
            raise InvalidParameterError(f"composition parts must be non-negative, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def modes(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class OccupationDistribution:
    """Probability of every composition of n over m modes"""

    n: int
    m: int
    algebra: Algebra
    probs: Dict[Composition, float] = field(default_factory=dict)

    def __post_init__(self):
        total = math.fsum(self.probs.values())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise InconsistencyError(f"inconsistency: distribution sums to {total!r}, expected 1")

    def probability(self, parts: Sequence[int]) -> float:
        return self.probs.get(Composition(tuple(parts)), 0.0)

    def values(self) -> np.ndarray:
        """Probabilities in enumeration order"""
        return np.array([self.probs[c] for c in compositions(self.n, self.m)])

    def spread(self) -> float:
        values = self.values()
        return float(values.max() - values.min())


@dataclass(frozen=True, eq=False)
class MultiModeState:
    """Amplitudes over (n+1)^m occupations; mode 1 is the most significant digit"""

    m: int
    per_mode_cutoff: int
    amplitudes: np.ndarray
    algebra: Algebra

    def __post_init__(self):
        vec = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        expected = self.per_mode_cutoff ** self.m
        if vec.shape[0] != expected:
            raise InvalidParameterError(
                f"state needs {expected} amplitudes for m={self.m}, cutoff={self.per_mode_cutoff}, got {vec.shape[0]}"
            )
        vec.setflags(write=False)
        object.__setattr__(self, "amplitudes", vec)

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.per_mode_cutoff,) * self.m

    def amplitude(self, parts: Sequence[int]) -> complex:
        index = np.ravel_multi_index(tuple(parts), self.shape)
        return complex(self.amplitudes[index])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _check_counts(n: int, m: int) -> None:
    if n < 0:
        raise InvalidParameterError(f"invalid particle count: need n >= 0, got {n}")
    if m < 1:
        raise InvalidParameterError(f"invalid mode count: need m >= 1, got {m}")


def _compose(n: int, m: int) -> Iterator[Tuple[int, ...]]:
    if m == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compose(n - first, m - 1):
            yield (first,) + rest


def compositions(n: int, m: int) -> List[Composition]:
    """All compositions of n into m parts, lexicographically decreasing"""
    _check_counts(n, m)
    return [Composition(parts) for parts in _compose(n, m)]


def _weyl_probability(parts: Tuple[int, ...], n: int, m: int) -> float:
    if n <= EXACT_FACTORIAL_LIMIT:
        coefficient = math.factorial(n)
        for k in parts:
            coefficient //= math.factorial(k)
        return coefficient / m ** n
    log_p = gammaln(n + 1) - sum(gammaln(k + 1) for k in parts) - n * math.log(m)
    return float(np.exp(log_p))


def dist_weyl(n: int, m: int) -> OccupationDistribution:
    """Multinomial law m^-n n! / prod k_j!"""
    _check_counts(n, m)
    probs = {c: _weyl_probability(c.parts, n, m) for c in compositions(n, m)}
    logger.info(f"Evaluated h(1) distribution n={n} m={m} over {len(probs)} compositions")
    return OccupationDistribution(n=n, m=m, algebra=Algebra.WEYL, probs=probs)


def dist_su11(n: int, m: int) -> OccupationDistribution:
    """Uniform law 1 / C(n+m-1, m-1); a point mass for m = 1"""
    _check_counts(n, m)
    support = compositions(n, m)
    weight = 1.0 / math.comb(n + m - 1, m - 1)
    probs = {c: weight for c in support}
    logger.info(f"Evaluated su(1,1) distribution n={n} m={m} over {len(probs)} compositions")
    return OccupationDistribution(n=n, m=m, algebra=Algebra.SU11, probs=probs)


def closed_form_distribution(n: int, m: int, algebra: Algebra) -> OccupationDistribution:
    return dist_weyl(n, m) if Algebra(algebra) is Algebra.WEYL else dist_su11(n, m)


def _single_mode_creator(cutoff: int, algebra: Algebra) -> np.ndarray:
    size = max(cutoff, 2)
    if algebra is Algebra.WEYL:
        _, creator, _ = make_ladder(size)
    else:
        creator = make_su11_hp(0.5, size).k_plus
    return creator.entries[:cutoff, :cutoff]


def coproduct_state(
    n: int,
    m: int,
    algebra: Algebra,
    max_amplitudes: int = AMPLITUDE_BUDGET,
) -> MultiModeState:
    """Normalized (a_1^dag + ... + a_m^dag)^n |0>_m by repeated application"""
    _check_counts(n, m)
    algebra = Algebra(algebra)
    cutoff = n + 1
    size = cutoff ** m
    if size > max_amplitudes:
        raise MemoryGuardError(f"memory: (n+1)^m = {size} amplitudes exceeds budget {max_amplitudes}")

    creator = _single_mode_creator(cutoff, algebra)
    psi = np.zeros((cutoff,) * m, dtype=np.complex128)
    psi[(0,) * m] = 1.0
    for _ in range(n):
        image = np.zeros_like(psi)
        for axis in range(m):
            moved = np.tensordot(creator, psi, axes=([1], [axis]))
            image += np.moveaxis(moved, 0, axis)
        psi = image

    norm = float(np.linalg.norm(psi))
    if norm == 0.0:
        raise InconsistencyError(f"inconsistency: coproduct state n={n} m={m} vanished")
    logger.debug(f"Built coproduct state n={n} m={m} algebra={algebra.value} raw norm {norm:.6e}")
    return MultiModeState(m=m, per_mode_cutoff=cutoff, amplitudes=psi / norm, algebra=algebra)


def distribution_from_state(state: MultiModeState) -> OccupationDistribution:
    """|amplitude|^2 over the compositions of n = per_mode_cutoff - 1"""
    norm_sq = state.norm() ** 2
    if abs(norm_sq - 1.0) > 1e-9:
        raise InconsistencyError(f"inconsistency: state norm^2 = {norm_sq:.12g}, expected 1")
    n = state.per_mode_cutoff - 1
    support = compositions(n, state.m)
    probs = {c: abs(state.amplitude(c.parts)) ** 2 for c in support}
    on_shell = math.fsum(probs.values())
    off_shell = norm_sq - on_shell
    if off_shell > 1e-9:
        raise InconsistencyError(f"inconsistency: off-shell mass {off_shell:.3e} outside total n={n}")
    if off_shell > 1e-12:
        logger.warning(f"Renormalizing away off-shell mass {off_shell:.3e}")
    probs = {c: p / on_shell for c, p in probs.items()}
    return OccupationDistribution(n=n, m=state.m, algebra=state.algebra, probs=probs)


def coproduct_amplitudes(n: int, m: int, algebra: Algebra) -> Dict[Composition, float]:
    """Closed-form normalized amplitudes of the coproduct state, all real positive"""
    dist = closed_form_distribution(n, m, algebra)
    return {c: math.sqrt(p) for c, p in dist.probs.items()}


def marginal(dist: OccupationDistribution, mode: int = 0) -> np.ndarray:
    """Distribution of k_{mode+1}, indexed by occupation 0..n"""
    if not 0 <= mode < dist.m:
        raise InvalidParameterError(f"mode {mode} outside 0..{dist.m - 1}")
    result = np.zeros(dist.n + 1)
    for composition, p in dist.probs.items():
        result[composition.parts[mode]] += p
    return result


def distribution_table(dist: OccupationDistribution) -> pd.DataFrame:
    """Columns k_1..k_m, probability in enumeration order"""
    rows = [list(c.parts) + [dist.probs[c]] for c in compositions(dist.n, dist.m)]
    columns = [f"k_{j + 1}" for j in range(dist.m)] + ["probability"]
    table = pd.DataFrame(rows, columns=columns)
    return table.astype({col: "int64" for col in columns[:-1]})
