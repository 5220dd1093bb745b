"""Exact derived Hall algebras of triangulated categories generated by a spherical object."""

from .arith import LaurentElement, RationalFunctionV
from .category import (IndecLabel, ObjClass, SphereDim, aut_count, hom_dim_T, iter_objects, make_object,
                       neg_hom_bound, shift_obj, simple, zero_object)
from .hall import (HallConfig, HallElement, assoc_check, basis_product, candidate_extensions,
                   express_in_spheres, hall_number, hall_product, unit)
from .ncpoly import GeneratorSymbol, NCPolynomial
from .presentations import (basis_rank_check, phi_eval, relation_set, torus_char, torus_relations_check,
                            verify_relations)

__version__ = "0.1.0"

__all__ = [
    "LaurentElement", "RationalFunctionV",
    "IndecLabel", "ObjClass", "SphereDim", "aut_count", "hom_dim_T", "iter_objects", "make_object",
    "neg_hom_bound", "shift_obj", "simple", "zero_object",
    "HallConfig", "HallElement", "assoc_check", "basis_product", "candidate_extensions",
    "express_in_spheres", "hall_number", "hall_product", "unit",
    "GeneratorSymbol", "NCPolynomial",
    "basis_rank_check", "phi_eval", "relation_set", "torus_char", "torus_relations_check", "verify_relations",
]
