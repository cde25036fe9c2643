"""Quivers with potential, their representations, cluster charts and type A string cones.

Submodules
----------
symbolic   exact Laurent polynomials, rational functions, tropicalization
quiver     ice quivers, exchange matrices, quiver mutation
qp         potentials, premutation, reduction, restriction
rep        decorated representations and their mutation, F-polynomials
cluster    seed paths, optimized seeds, Landau-Ginzburg potentials
typea      reduced words, wiring diagrams, Gamma quivers, string cones
"""

from . import cluster, qp, quiver, rep, symbolic, typea
from .cluster import lg_potential, lg_potential_chart, lg_potential_via_fpoly
from .qp import Potential, QPInstance, mutate_qp, reduce
from .quiver import Arrow, IceQuiver, b_matrix, mutate_quiver, validate
from .rep import DecoratedRep, build_injective, build_projective, is_isomorphic, mutate_rep
from .symbolic import LaurentExpr, RationalExpr, tropicalize
from .typea import gamma_qp, gamma_quiver, reduced_words, wiring_diagram

__all__ = [
    "cluster", "qp", "quiver", "rep", "symbolic", "typea",
    "lg_potential", "lg_potential_chart", "lg_potential_via_fpoly",
    "Potential", "QPInstance", "mutate_qp", "reduce",
    "Arrow", "IceQuiver", "b_matrix", "mutate_quiver", "validate",
    "DecoratedRep", "build_injective", "build_projective", "is_isomorphic", "mutate_rep",
    "LaurentExpr", "RationalExpr", "tropicalize",
    "gamma_qp", "gamma_quiver", "reduced_words", "wiring_diagram",
]

__version__ = "0.1.0"
