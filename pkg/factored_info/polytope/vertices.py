"""Constraint systems {p >= 0 : M p = b} and their exact vertex enumeration.

Vertices are found as basic feasible solutions: for every set of rank-many
columns whose square subsystem is nonsingular, the unique solution
supported on those columns is kept when it is nonnegative.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..core.distribution import Distribution
from ..core.state_space import State, StateSpace, format_state
from ..errors import check_cap
from ..family.family import UnionFind
from ..registry import OperationModule, operation
from ..settings import get_global_settings
from .linalg import Vector, rank_of, rational_rank_and_kernel, reduce_system, solve_basis, to_fraction

logger = logging.getLogger(__name__)

_MODULE = OperationModule.EXACT_POLYTOPE


@dataclass(frozen=True)
class ConstraintSystem:
    """Equalities M p = b over the joint states named by column_labels"""
    matrix: Tuple[Vector, ...]
    rhs: Vector
    column_labels: Tuple[State, ...]
    row_labels: Tuple[object, ...] = ()

    def __post_init__(self):
        matrix = tuple(tuple(to_fraction(v) for v in row) for row in self.matrix)
        rhs = tuple(to_fraction(v) for v in self.rhs)
        labels = tuple(tuple(s) for s in self.column_labels)
        if len(rhs) != len(matrix):
            raise ValueError(f"rhs has {len(rhs)} entries for {len(matrix)} rows")
        if any(len(row) != len(labels) for row in matrix):
            raise ValueError(f"Every row needs {len(labels)} entries, one per column label")
        if self.row_labels and len(self.row_labels) != len(matrix):
            raise ValueError(f"{len(self.row_labels)} row labels for {len(matrix)} rows")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "column_labels", labels)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))

    @property
    def row_count(self) -> int:
        return len(self.matrix)

    @property
    def column_count(self) -> int:
        return len(self.column_labels)

    def restrict_columns(self, labels: Sequence[State]) -> "ConstraintSystem":
        """Keep only the named columns, in the given order"""
        position = {label: j for j, label in enumerate(self.column_labels)}
        missing = [format_state(s) for s in labels if tuple(s) not in position]
        if missing:
            raise ValueError(f"Unknown column labels: {missing}")
        keep = [position[tuple(s)] for s in labels]
        return ConstraintSystem(
            tuple(tuple(row[j] for j in keep) for row in self.matrix),
            self.rhs,
            tuple(tuple(s) for s in labels),
            self.row_labels,
        )

    def drop_zero_rows(self) -> "ConstraintSystem":
        """Remove rows 0 = 0; a zero row with nonzero rhs is kept so infeasibility stays visible"""
        keep = [i for i, row in enumerate(self.matrix) if any(row) or self.rhs[i] != 0]
        return ConstraintSystem(
            tuple(self.matrix[i] for i in keep),
            tuple(self.rhs[i] for i in keep),
            self.column_labels,
            tuple(self.row_labels[i] for i in keep) if self.row_labels else (),
        )

    def is_satisfied_by(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.column_count or any(x < 0 for x in v):
            return False
        return all(sum(a * x for a, x in zip(row, v)) == b for row, b in zip(self.matrix, self.rhs))


@dataclass(frozen=True)
class PolytopeReport:
    """Exact description of {p >= 0 : M p = b} for one constraint system"""
    column_labels: Tuple[State, ...]
    rank: int
    affine_dimension: int
    kernel_basis: Tuple[Vector, ...] = ()
    vertices: Tuple[Vector, ...] = ()
    is_empty: bool = False
    vertex_span_dimension: int = -1
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def is_point(self) -> bool:
        return not self.is_empty and len(self.vertices) == 1

    def vertex_distribution(self, space: StateSpace, k: int) -> Distribution:
        """Vertex k as an exact distribution on the full space"""
        return Distribution.from_mapping(
            space, dict(zip(self.column_labels, self.vertices[k])), exact=True
        )

    def vertex_distributions(self, space: StateSpace) -> List[Distribution]:
        return [self.vertex_distribution(space, k) for k in range(len(self.vertices))]


def _vertex_sort_key(labels: Sequence[State], v: Vector):
    support = tuple(labels[j] for j, x in enumerate(v) if x > 0)
    return support, tuple(-x for x in v)


@operation("enumerate_vertices", _MODULE)
def enumerate_vertices(system: ConstraintSystem, cap: Optional[int] = None) -> List[Vector]:
    """All vertices of {p >= 0 : M p = b}; empty when the set is empty.

    Sorted by the support states of each vertex.
    """
    limit = get_global_settings().vertex_column_cap if cap is None else cap
    check_cap("vertex_column_cap", limit, system.column_count)
    if system.row_count == 0:
        raise ValueError("Constraint system has no rows; the feasible set is unbounded")
    reduced = reduce_system(system.matrix, system.rhs)
    if reduced is None:
        logger.debug("Constraint system is inconsistent")
        return []
    matrix, rhs, rank = reduced
    if rank == 0:
        return [tuple(Fraction(0) for _ in system.column_labels)]

    found = set()
    checked = 0
    for columns in itertools.combinations(range(system.column_count), rank):
        checked += 1
        solution = solve_basis(matrix, rhs, columns)
        if solution is None or any(x < 0 for x in solution):
            continue
        v = [Fraction(0)] * system.column_count
        for j, x in zip(columns, solution):
            v[j] = x
        found.add(tuple(v))
    vertices = sorted(found, key=lambda v: _vertex_sort_key(system.column_labels, v))
    logger.debug(f"Checked {checked} bases over {system.column_count} columns, found {len(vertices)} vertices")
    return vertices


def analyze_system(system: ConstraintSystem, cap: Optional[int] = None) -> PolytopeReport:
    """Rank, kernel, vertices and dimensions of one constraint system"""
    if system.row_count == 0 or system.column_count == 0:
        return PolytopeReport(system.column_labels, 0, -1, is_empty=True, notes=("no feasible states",))
    rank, kernel = rational_rank_and_kernel(system.matrix)
    vertices = enumerate_vertices(system, cap)
    if not vertices:
        return PolytopeReport(system.column_labels, rank, -1, tuple(kernel), is_empty=True)
    base = vertices[0]
    differences = [tuple(a - b for a, b in zip(v, base)) for v in vertices[1:]]
    span = rank_of(differences)
    return PolytopeReport(
        column_labels=system.column_labels,
        rank=rank,
        affine_dimension=system.column_count - rank,
        kernel_basis=tuple(kernel),
        vertices=tuple(vertices),
        vertex_span_dimension=span,
    )


def is_vertex_certificate(system: ConstraintSystem, v: Sequence[Fraction]) -> bool:
    """v is feasible and the columns on its support are linearly independent"""
    v = tuple(to_fraction(x) for x in v)
    if not system.is_satisfied_by(v):
        return False
    support = [j for j, x in enumerate(v) if x > 0]
    if not support:
        return True
    columns = [tuple(row[j] for row in system.matrix) for j in support]
    return rank_of(columns) == len(support)


def support_graph_is_forest(v: Sequence[Fraction], shape: Tuple[int, int]) -> bool:
    """Whether the positive cells of an m1 x m2 table form an acyclic bipartite graph.

    ``v`` holds the table in row-major order. For 2-way transportation
    polytopes this is exactly the vertex condition.
    """
    rows, cols = shape
    if len(v) != rows * cols:
        raise ValueError(f"Table of shape {shape} needs {rows * cols} entries, got {len(v)}")
    uf = UnionFind(rows + cols)
    for index, x in enumerate(v):
        if x <= 0:
            continue
        i, j = divmod(index, cols)
        if uf.find(i) == uf.find(rows + j):
            return False
        uf.union(i, rows + j)
    return True
