"""Exact rational polytopes cut out by margin constraints"""

from .linalg import rank_of, rational_rank_and_kernel
from .margins import margin_constraint_system, margin_specified_polytope, margins_of
from .vertices import (
    ConstraintSystem,
    PolytopeReport,
    analyze_system,
    enumerate_vertices,
    is_vertex_certificate,
    support_graph_is_forest,
)

__all__ = [
    "ConstraintSystem",
    "PolytopeReport",
    "analyze_system",
    "enumerate_vertices",
    "is_vertex_certificate",
    "margin_constraint_system",
    "margin_specified_polytope",
    "margins_of",
    "rank_of",
    "rational_rank_and_kernel",
    "support_graph_is_forest",
]
