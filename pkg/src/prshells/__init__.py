"""Power residue codes, their Jacobi polynomials and harmonic weight enumerators,
and the 2-designs carried by unions of conjugate shells."""

from .arith import Polynomial, find_irreducible, primitive_pth_root
from .blocks import BlockMultiset
from .designs import check_design, reproduce_table, shells_union
from .groups import PermGroup, Permutation, affine_group, conjugating_permutation, orbits_on_ksubsets
from .harmonics import (
    SubsetFunction,
    conjugate_vanishing_check,
    delsarte_design_check,
    harmonic_weight_enumerator,
    invariant_harmonic_basis,
)
from .jacobi import JacobiPolynomial, independence_check, jacobi, jacobi_conjugate_sum, lambda_from_jacobi
from .prcode import build_code, dual, permute_code, residue_cosets, weight_distribution

__version__ = "0.1.0"

__all__ = [
    "BlockMultiset",
    "JacobiPolynomial",
    "PermGroup",
    "Permutation",
    "Polynomial",
    "SubsetFunction",
    "affine_group",
    "build_code",
    "check_design",
    "conjugate_vanishing_check",
    "conjugating_permutation",
    "delsarte_design_check",
    "dual",
    "find_irreducible",
    "harmonic_weight_enumerator",
    "independence_check",
    "invariant_harmonic_basis",
    "jacobi",
    "jacobi_conjugate_sum",
    "lambda_from_jacobi",
    "orbits_on_ksubsets",
    "permute_code",
    "primitive_pth_root",
    "reproduce_table",
    "residue_cosets",
    "shells_union",
    "weight_distribution",
]
