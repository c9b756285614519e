"""
Lorentz Module
Boost matrices and covariance checks for su(1,1) and h(1) bosons.
"""

from .covariance import (
    BoostMatrix,
    ProbeAlgebra,
    Su11Fundamental,
    SymmetryProbeConfig,
    WaveVector,
    boost_matrix,
    boost_modes,
    boosted_wavevector,
    conjugated_probe,
    exp_boost,
    indefinite_norm,
    internal_symmetry_residual,
    lorentz_gamma,
    polarization_pb_residuals,
    random_hermitian_probe,
    rapidity,
    su11_fundamental,
)

__all__ = [
    "BoostMatrix",
    "ProbeAlgebra",
    "Su11Fundamental",
    "SymmetryProbeConfig",
    "WaveVector",
    "boost_matrix",
    "boost_modes",
    "boosted_wavevector",
    "conjugated_probe",
    "exp_boost",
    "indefinite_norm",
    "internal_symmetry_residual",
    "lorentz_gamma",
    "polarization_pb_residuals",
    "random_hermitian_probe",
    "rapidity",
    "su11_fundamental",
]
