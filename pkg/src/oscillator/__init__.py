"""
Oscillator Module
su(1,1) realizations of the harmonic oscillator.
"""

from .su11_oscillator import (
    InverseHPResult,
    ObservableSource,
    OscillatorPair,
    SchwingerGenerators,
    SU11Observables,
    generalized_bracket_check,
    heisenberg_residuals,
    inverse_hp_ladder,
    oscillator_pair,
    schwinger_casimir,
    schwinger_generators,
    schwinger_parity_spectra,
    schwinger_residuals,
    su11_observables_linear,
)

__all__ = [
    "InverseHPResult",
    "ObservableSource",
    "OscillatorPair",
    "SchwingerGenerators",
    "SU11Observables",
    "generalized_bracket_check",
    "heisenberg_residuals",
    "inverse_hp_ladder",
    "oscillator_pair",
    "schwinger_casimir",
    "schwinger_generators",
    "schwinger_parity_spectra",
    "schwinger_residuals",
    "su11_observables_linear",
]
