"""Exact scalars, polynomials, rational functions and linear algebra."""
from .expr import ExpressionError, format_scalar, parse_eps, parse_expression, parse_scalar
from .linalg import (
    NO_SOLUTION,
    NON_UNIQUE,
    Matrix,
    Outcome,
    Subspace,
    dot,
    left_kernel,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    reduce_vector,
    row_basis,
    rref,
    rref_pivots,
    solve_linear,
    subspace_limit,
)
from .numberfield import AlgebraicNumber, NumberField, dihedral_cos
from .poly import EPS, INFINITE, Poly, RationalFunction, limit_at_zero

__all__ = [
    "AlgebraicNumber", "EPS", "ExpressionError", "INFINITE", "Matrix", "NO_SOLUTION", "NON_UNIQUE",
    "NumberField", "Outcome", "Poly", "RationalFunction", "Subspace", "dihedral_cos", "dot",
    "format_scalar", "left_kernel", "limit_at_zero", "mat_mul", "mat_vec", "nullspace",
    "parse_eps", "parse_expression", "parse_scalar", "rank", "reduce_vector", "row_basis",
    "rref", "rref_pivots", "solve_linear", "subspace_limit",
]
