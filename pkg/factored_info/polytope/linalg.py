"""Exact rational linear algebra on top of sympy matrices.

Entries enter and leave as ``fractions.Fraction``; inside, sympy keeps
everything as ``Rational`` so no rounding ever happens.
"""

import logging
from fractions import Fraction
from numbers import Integral, Rational
from typing import List, Optional, Sequence, Tuple

import sympy

from ..registry import OperationModule, operation

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
RationalMatrix = Sequence[Sequence[Rational]]


def to_fraction(value) -> Fraction:
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, float) or not isinstance(value, Rational):
        raise ValueError(f"Exact arithmetic needs rational entries, got {value!r}")
    return Fraction(value)


def _rational(value) -> sympy.Rational:
    f = to_fraction(value)
    return sympy.Rational(f.numerator, f.denominator)


def to_sympy(rows: RationalMatrix) -> sympy.Matrix:
    if len(rows) == 0 or len(rows[0]) == 0:
        raise ValueError("Matrix must be nonempty")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("Matrix rows have different lengths")
    return sympy.Matrix([[_rational(v) for v in row] for row in rows])


def column_to_vector(column: sympy.Matrix) -> Vector:
    return tuple(to_fraction(v) for v in column)


@operation("rational_rank_and_kernel", OperationModule.EXACT_POLYTOPE)
def rational_rank_and_kernel(rows: RationalMatrix) -> Tuple[int, List[Vector]]:
    """Rank and a kernel basis by exact row reduction.

    The basis has one vector per free column of the reduced echelon form, with
    a 1 in that column; rank plus kernel dimension equals the column count.
    """
    matrix = to_sympy(rows)
    rank = matrix.rank()
    kernel = [column_to_vector(v) for v in matrix.nullspace()]
    if rank + len(kernel) != matrix.cols:
        raise AssertionError(f"rank {rank} + nullity {len(kernel)} != {matrix.cols} columns")
    return rank, kernel


def rank_of(rows: RationalMatrix) -> int:
    if len(rows) == 0:
        return 0
    return to_sympy(rows).rank()


def reduce_system(rows: RationalMatrix, rhs: Sequence[Rational]) -> Optional[Tuple[sympy.Matrix, sympy.Matrix, int]]:
    """Row-reduce [M | b] and keep only independent equations.

    Returns ``None`` when the system is inconsistent, otherwise the reduced
    matrix, right-hand side and rank.
    """
    matrix = to_sympy(rows)
    b = sympy.Matrix([_rational(v) for v in rhs])
    reduced, pivots = matrix.row_join(b).rref()
    if matrix.cols in pivots:
        return None
    rank = len(pivots)
    return reduced[:rank, :matrix.cols], reduced[:rank, matrix.cols], rank


def solve_basis(reduced: sympy.Matrix, rhs: sympy.Matrix, columns: Sequence[int]) -> Optional[Vector]:
    """Solve the square subsystem on the given columns; ``None`` if it is singular"""
    square = reduced[:, list(columns)]
    solved, pivots = square.row_join(rhs).rref()
    if list(pivots) != list(range(len(columns))):
        return None
    return column_to_vector(solved[:, len(columns)])
