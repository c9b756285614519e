"""
bosonalg
Truncated-Fock numerics contrasting su(1,1) bosons with Heisenberg-Weyl bosons:
multi-mode statistics, oscillator identities, Lorentz covariance and
Jaynes-Cummings inversion dynamics.
"""

__version__ = "0.1.0"
__author__ = "bosonalg developers"
