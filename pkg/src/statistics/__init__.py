"""
Statistics Module
Composition enumeration and coproduct occupation distributions.
"""

from .coproduct import (
    Algebra,
    Composition,
    MultiModeState,
    OccupationDistribution,
    closed_form_distribution,
    compositions,
    coproduct_amplitudes,
    coproduct_state,
    dist_su11,
    dist_weyl,
    distribution_from_state,
    distribution_table,
    marginal,
)

__all__ = [
    "Algebra",
    "Composition",
    "MultiModeState",
    "OccupationDistribution",
    "closed_form_distribution",
    "compositions",
    "coproduct_amplitudes",
    "coproduct_state",
    "dist_su11",
    "dist_weyl",
    "distribution_from_state",
    "distribution_table",
    "marginal",
]
