"""Invariants and totally-geodesic criteria for families of abelian covers of P^1."""

__version__ = "0.1.0"

from .cover import CoverSpec, FormSpec, basis_forms, char_table, eigen_dim, genus, validate
from .prym import branch_count, classify_prym, minus_dims, prym_spec, prym_witness, quotient_genus
from .torelli import (
    Status,
    bound_report,
    classify_torelli,
    condition_star,
    sym2_invariant_dim,
    torelli_witness,
)

__all__ = [
    "CoverSpec",
    "FormSpec",
    "Status",
    "basis_forms",
    "bound_report",
    "branch_count",
    "char_table",
    "classify_prym",
    "classify_torelli",
    "condition_star",
    "eigen_dim",
    "genus",
    "minus_dims",
    "prym_spec",
    "prym_witness",
    "quotient_genus",
    "sym2_invariant_dim",
    "torelli_witness",
    "validate",
]
