"""Exact scalars, polynomials, parsing, grading and linear algebra."""
from .grading import (
    WeightSystem,
    is_quasi_homogeneous,
    jacobian_quotient_dims,
    milnor_number,
    monomials_of_degree,
    weighted_degree,
)
from .matrix import PolyMatrix
from .linalg import Eliminator, GradedSolveProblem, graded_component_rank, nullspace, solve_dense
from .parse import ParseError, parse_poly
from .poly import Poly
from .scalars import GAUSSIAN, RATIONAL, Gaussian, I

__all__ = [
    "Eliminator", "GAUSSIAN", "PolyMatrix", "Gaussian", "GradedSolveProblem", "I", "ParseError", "Poly",
    "RATIONAL", "WeightSystem", "graded_component_rank", "is_quasi_homogeneous",
    "jacobian_quotient_dims", "milnor_number", "monomials_of_degree", "nullspace",
    "parse_poly", "solve_dense", "weighted_degree",
]
