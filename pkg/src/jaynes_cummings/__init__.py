"""
Jaynes-Cummings Module
Linear and su(1,1) atom-field models, coherent states and inversion dynamics.
"""

from .dynamics import (
    CollapseConfig,
    SeriesLabel,
    SeriesResult,
    TimeSeries,
    closed_form_series,
    collapse_time,
    evolve_state,
    excitation_number,
    revival_period,
    series_S,
    series_s_with_bound,
    sz_closed_bs_bg,
    sz_closed_bs_glauber,
    sz_closed_linear_bg,
    sz_closed_linear_glauber,
    sz_exact,
    sz_series_bs_bg,
)
from .model import (
    JCModel,
    Variant,
    block_eigenvalues,
    build_hamiltonian,
    dressed_spectrum,
    rabi_frequency,
    rabi_period,
)
from .states import (
    AtomFieldState,
    AtomicLevel,
    barut_girardello_state,
    bessel_i0,
    glauber_state,
    product_state,
)

__all__ = [
    "AtomFieldState",
    "AtomicLevel",
    "CollapseConfig",
    "JCModel",
    "SeriesLabel",
    "SeriesResult",
    "TimeSeries",
    "Variant",
    "barut_girardello_state",
    "bessel_i0",
    "block_eigenvalues",
    "build_hamiltonian",
    "closed_form_series",
    "collapse_time",
    "dressed_spectrum",
    "evolve_state",
    "excitation_number",
    "glauber_state",
    "product_state",
    "rabi_frequency",
    "rabi_period",
    "revival_period",
    "series_S",
    "series_s_with_bound",
    "sz_closed_bs_bg",
    "sz_closed_bs_glauber",
    "sz_closed_linear_bg",
    "sz_closed_linear_glauber",
    "sz_exact",
    "sz_series_bs_bg",
]
