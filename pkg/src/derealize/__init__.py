"""Exact integer-matrix algorithms for realizing DE attractors of tori in codimension 2."""

from .exactmat import (
    IntMatrix,
    Mod2Matrix,
    Mod2RowVector,
    cofactor,
    determinant,
    generator,
    inverse_unimodular,
    mod2,
    multiply,
    parse_matrix,
)
from .extend import ModularType, coset_representative, is_extendable, orbit_of_standard, type_of
from .planner import build_B, compose_automorphism_step, favorite_lifting, realize, step_type
from .smith import SmithDecomposition, elementary_factors, smith_decompose
from .spectra import char_poly, ensure_positive_degree, is_expanding
from .words import GeneratorWord, GenToken, decompose_odd_columns, eval_word, factor_KJ, rewrite_to_base

__all__ = [
    "IntMatrix", "Mod2Matrix", "Mod2RowVector", "cofactor", "determinant", "generator",
    "inverse_unimodular", "mod2", "multiply", "parse_matrix",
    "ModularType", "coset_representative", "is_extendable", "orbit_of_standard", "type_of",
    "build_B", "compose_automorphism_step", "favorite_lifting", "realize", "step_type",
    "SmithDecomposition", "elementary_factors", "smith_decompose",
    "char_poly", "ensure_positive_degree", "is_expanding",
    "GeneratorWord", "GenToken", "decompose_odd_columns", "eval_word", "factor_KJ", "rewrite_to_base",
]
