"""Exact computations for holonomy Lie algebras of reflection arrangements,
Gaudin subalgebras, nested-set charts and graph-associahedra."""
from __future__ import annotations

from .arrangements import Arrangement, RootSystem, build_root_system, counterexample_arrangement, parse_type
from .exact import EPS, RationalFunction, Subspace
from .holonomy import Degree2Algebra, gaudin_subalgebra, limit_gaudin

__all__ = [
    "Arrangement", "Degree2Algebra", "EPS", "RationalFunction", "RootSystem", "Subspace",
    "build_root_system", "counterexample_arrangement", "gaudin_subalgebra", "limit_gaudin", "parse_type",
]
__version__ = "0.1.0"
