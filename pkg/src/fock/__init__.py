"""
Truncated Fock Space Module
Ladder operators, Holstein-Primakoff su(1,1) generators and operator residuals.
"""

from .core import (
    TOLERANCES,
    FockState,
    InteriorBlock,
    Tolerances,
    TruncatedOperator,
    adjoint,
    apply,
    basis_state,
    ccr_trace_defect,
    commutator,
    diagonal_power,
    embed,
    evolve_unitary,
    expectation,
    identity,
    interior,
    interior_residual,
    is_hermitian,
    make_ladder,
    span_residual,
    tensor_product,
)
from .su11 import (
    SU11Generators,
    casimir,
    casimir_residual,
    casimir_value,
    make_su11_hp,
    relation_residuals,
    validate_kappa,
)

__all__ = [
    "TOLERANCES",
    "FockState",
    "InteriorBlock",
    "Tolerances",
    "TruncatedOperator",
    "SU11Generators",
    "adjoint",
    "apply",
    "basis_state",
    "casimir",
    "casimir_residual",
    "casimir_value",
    "ccr_trace_defect",
    "commutator",
    "diagonal_power",
    "embed",
    "evolve_unitary",
    "expectation",
    "identity",
    "interior",
    "interior_residual",
    "is_hermitian",
    "make_ladder",
    "make_su11_hp",
    "relation_residuals",
    "span_residual",
    "tensor_product",
    "validate_kappa",
]
