"""Finite-dimensional U_t(sl_{n+1})-modules, crystal lattices and invariant forms."""
from .module import (
    Rep,
    fundamental_rep,
    highest_weight_submodule,
    irreducible,
    tensor_power,
    tensor_rep,
    verify_uq_relations,
)

__all__ = ["Rep", "fundamental_rep", "highest_weight_submodule", "irreducible", "tensor_power",
           "tensor_rep", "verify_uq_relations"]
