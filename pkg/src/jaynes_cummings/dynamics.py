"""
Inversion Dynamics
Per-block exact evolution, the S_{tau,mu} series and closed forms for <S_z(t)>
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy.ndimage import maximum_filter1d

from src.errors import (
    CutoffMismatchError,
    InconsistencyError,
    InvalidParameterError,
    OverflowGuardError,
)
from src.jaynes_cummings.model import JCModel, Variant
from src.jaynes_cummings.states import AtomFieldState, bessel_i0

logger = logging.getLogger(__name__)

SERIES_TOLERANCE = 1e-14
MAX_SERIES_TERMS = 100000
SERIES_ARGUMENT_LIMIT = 700.0


class SeriesLabel(str, Enum):
    EXACT = "exact"
    CLOSED_FORM = "closed-form"
    SERIES = "series"


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """<S_z(t)> sampled on an increasing time grid"""

    times: np.ndarray
    values: np.ndarray
    label: SeriesLabel

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float).reshape(-1)
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if times.shape != values.shape:
            raise InconsistencyError(f"inconsistency: {times.shape[0]} times vs {values.shape[0]} values")
        if np.any(np.diff(times) <= 0):
            raise InvalidParameterError("invalid time grid: times must be strictly increasing")
        if values.size and float(np.max(np.abs(values))) > 0.5 + 1e-9:
            raise InconsistencyError(f"inconsistency: |<S_z>| reached {float(np.max(np.abs(values))):.12g} > 1/2")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "label", SeriesLabel(self.label))

    def __len__(self) -> int:
        return self.times.shape[0]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.times, self.label.value: self.values})


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms: int
    tail_bound: float


@dataclass
class CollapseConfig:
    """Envelope estimator for the first collapse"""
    threshold: float = 0.1        # fraction of the initial envelope
    window_periods: float = 1.0   # moving-maximum width in Rabi periods


def _block_arrays(m: JCModel):
    blocks = np.arange(1, m.cutoff)
    excited = 2 * (blocks - 1) + 1
    ground = 2 * blocks
    coupling = m.coupling_element(blocks)
    centre = m.omega * blocks - 0.5 * m.omega
    half_gap = -0.5 * m.detuning
    rabi = np.sqrt(m.detuning ** 2 + 4.0 * coupling ** 2)
    return excited, ground, coupling, centre, half_gap, rabi


def _propagate(m: JCModel, amplitudes: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Closed-form 2x2 propagation of every block; rows of the result follow ``times``"""
    times = np.asarray(times, dtype=float).reshape(-1, 1)
    excited, ground, coupling, centre, half_gap, rabi = _block_arrays(m)
    psi_e = amplitudes[excited][None, :]
    psi_g = amplitudes[ground][None, :]

    # exp(-i h t) = exp(-i c t) [cos(R t/2) - i sin(R t/2)/(R/2) (h - c)]
    cos_part = np.cos(0.5 * rabi * times)
    sin_part = times * np.sinc(rabi * times / (2.0 * np.pi))
    phase = np.exp(-1j * centre * times)
    new_e = phase * (cos_part * psi_e - 1j * sin_part * (half_gap * psi_e + coupling * psi_g))
    new_g = phase * (cos_part * psi_g - 1j * sin_part * (coupling * psi_e - half_gap * psi_g))

    result = np.empty((times.shape[0], amplitudes.shape[0]), dtype=np.complex128)
    result[:, excited] = new_e
    result[:, ground] = new_g
    result[:, 0] = amplitudes[0] * np.exp(0.5j * m.omega0 * times[:, 0])
    edge_energy = m.omega * (m.cutoff - 1) + 0.5 * m.omega0
    result[:, -1] = amplitudes[-1] * np.exp(-1j * edge_energy * times[:, 0])
    return result


def _check_state(m: JCModel, initial: AtomFieldState) -> None:
    if initial.cutoff != m.cutoff:
        raise CutoffMismatchError(f"cutoff mismatch: model {m.cutoff} vs state {initial.cutoff}")


def evolve_state(m: JCModel, initial: AtomFieldState, t: float) -> AtomFieldState:
    """exp(-iHt)|initial> assembled block by block"""
    _check_state(m, initial)
    return AtomFieldState(_propagate(m, initial.amplitudes, np.array([t]))[0])


def sz_exact(m: JCModel, initial: AtomFieldState, times: Sequence[float]) -> TimeSeries:
    _check_state(m, initial)
    times = np.asarray(times, dtype=float)
    evolved = _propagate(m, initial.amplitudes, times)
    populations = np.abs(evolved) ** 2
    values = 0.5 * (populations[:, 1::2].sum(axis=1) - populations[:, 0::2].sum(axis=1))
    logger.info(f"Evolved {m.variant.value} model over {times.shape[0]} time points at cutoff {m.cutoff}")
    return TimeSeries(times=times, values=values, label=SeriesLabel.EXACT)


def excitation_number(state: AtomFieldState) -> float:
    """<n + S_z>, conserved by both Hamiltonians"""
    return state.mean_photons() + state.inversion()


def series_s_with_bound(
    tau: float,
    mu: float,
    zeta: complex,
    lam: float,
    t: float,
    tol: float = SERIES_TOLERANCE,
) -> SeriesResult:
    """sum_n |zeta|^(2n) / (n!)^mu cos(2 lam n^tau t), stopped on a geometric tail majorant"""
    if mu < 1:
        raise InvalidParameterError(f"invalid series exponent: need mu >= 1, got {mu}")
    if not tol > 0:
        raise InvalidParameterError(f"invalid tolerance: need tol > 0, got {tol}")
    x = abs(complex(zeta)) ** 2
    if x > SERIES_ARGUMENT_LIMIT:
        raise OverflowGuardError(f"overflow: series needs |zeta|^2 <= {SERIES_ARGUMENT_LIMIT:g}, got {x:.6g}")

    weight = 1.0
    total = 1.0
    n = 0
    while True:
        ratio = x / (n + 2) ** mu
        next_weight = weight * x / (n + 1) ** mu
        if ratio < 1.0:
            bound = next_weight / (1.0 - ratio)
            if bound < tol:
                return SeriesResult(value=total, terms=n + 1, tail_bound=bound)
        n += 1
        if n > MAX_SERIES_TERMS:
            raise OverflowGuardError(f"overflow: series did not converge within {MAX_SERIES_TERMS} terms")
        weight = next_weight
        total += weight * math.cos(2.0 * lam * n ** tau * t)


def series_S(tau: float, mu: float, zeta: complex, lam: float, t: float, tol: float = SERIES_TOLERANCE) -> float:
    return series_s_with_bound(tau, mu, zeta, lam, t, tol).value


def sz_closed_linear_glauber(alpha: complex, lam: float, t: float) -> float:
    """-1/2 exp(-|alpha|^2) S_{1/2,1}(alpha), resonance"""
    x = abs(complex(alpha)) ** 2
    return -0.5 * math.exp(-x) * series_S(0.5, 1.0, alpha, lam, t)


def sz_closed_bs_glauber(alpha: complex, lam0: float, t: float) -> float:
    """-1/2 exp(-|alpha|^2) exp(|alpha|^2 cos 2 lam0 t) cos(|alpha|^2 sin 2 lam0 t)"""
    x = abs(complex(alpha)) ** 2
    angle = 2.0 * lam0 * t
    return -0.5 * math.exp(x * (math.cos(angle) - 1.0)) * math.cos(x * math.sin(angle))


def sz_closed_bs_bg(eta: complex, lam0: float, t: float) -> float:
    """-1/2 Re I0(2|eta| e^{i lam0 t}) / I0(2|eta|)"""
    radius = 2.0 * abs(complex(eta))
    rotated = bessel_i0(radius * complex(math.cos(lam0 * t), math.sin(lam0 * t)))
    return -0.5 * rotated.real / bessel_i0(radius).real


def sz_series_bs_bg(eta: complex, lam0: float, t: float) -> float:
    """Same quantity through -1/2 S_{1,2}(eta) / I0(2|eta|)"""
    return -0.5 * series_S(1.0, 2.0, eta, lam0, t) / bessel_i0(2.0 * abs(complex(eta))).real


def sz_closed_linear_bg(eta: complex, lam: float, t: float) -> float:
    """-1/2 S_{1/2,2}(eta) / I0(2|eta|) for the linear coupling"""
    return -0.5 * series_S(0.5, 2.0, eta, lam, t) / bessel_i0(2.0 * abs(complex(eta))).real


def closed_form_series(func, parameter: complex, coupling: float, times: Sequence[float]) -> TimeSeries:
    """Sample a closed form on a time grid"""
    times = np.asarray(times, dtype=float)
    values = np.array([func(parameter, coupling, float(t)) for t in times])
    return TimeSeries(times=times, values=values, label=SeriesLabel.CLOSED_FORM)


def revival_period(m: JCModel) -> Optional[float]:
    """pi/|lambda0| for the su11 model at resonance; no exact period otherwise"""
    if m.variant is not Variant.SU11 or m.detuning != 0 or m.coupling == 0:
        return None
    return math.pi / abs(m.coupling)


def collapse_time(
    series: TimeSeries,
    rabi_period: float,
    config: Optional[CollapseConfig] = None,
) -> Optional[float]:
    """First time the moving-maximum envelope of |<S_z>| drops below threshold x its initial value"""
    config = config or CollapseConfig()
    if not rabi_period > 0:
        raise InvalidParameterError(f"invalid Rabi period: need > 0, got {rabi_period}")
    if len(series) < 2:
        raise InvalidParameterError("collapse time needs at least two samples")
    step = float(np.median(np.diff(series.times)))
    width = max(1, int(round(config.window_periods * rabi_period / step)))
    envelope = maximum_filter1d(np.abs(series.values), size=width, mode="nearest")
    below = np.nonzero(envelope < config.threshold * envelope[0])[0]
    if below.size == 0:
        logger.warning(f"No collapse found within t <= {series.times[-1]:.6g}")
        return None
    return float(series.times[below[0]])
