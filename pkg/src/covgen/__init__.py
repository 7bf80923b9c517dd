"""Minimal generating systems of covariants of binary forms.

Modules: ``poly`` (exact polynomials and Cayley forms), ``weitzenbock``
(the derivations D1, D2 and Cayley coordinates), ``covariants`` (Roberts'
correspondence and transvectants), ``enumerative`` (dimension counting),
``search`` (the generator search) and ``cli``.
"""

from .covariants import (Covariant, SemiInvariant, basic_form, kappa, kappa_inv,
                         semitransvectant, semitransvectant_fast, transvectant)
from .enumerative import dim_covariants, gaussian_binomial, poincare_sigma
from .kernels import BACKEND
from .poly import Poly, Q, VarSet, X, Z, ZA, ZForm, grade, primitive_part
from .search import SearchConfig, SearchState, load_state, run_search, save_state
from .weitzenbock import cayley_z, d1, d2, d2_images_in_z, is_semi_invariant, nilpotency_order, x_to_z, z_to_x

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Covariant", "Poly", "Q", "SearchConfig", "SearchState", "SemiInvariant",
    "VarSet", "X", "Z", "ZA", "ZForm", "basic_form", "cayley_z", "d1", "d2", "d2_images_in_z",
    "dim_covariants", "gaussian_binomial", "grade", "is_semi_invariant", "kappa", "kappa_inv",
    "load_state", "nilpotency_order", "poincare_sigma", "primitive_part", "run_search",
    "save_state", "semitransvectant", "semitransvectant_fast", "transvectant", "x_to_z", "z_to_x",
]
