"""Test script for I_lambda, FMI, SFMI and the margin statistics matrix

Usage:
    # Method 1: Run directly (from project root)
    python tests/family/test_family_measures.py

    # Method 2: Run with pytest
    pytest tests/family/test_family_measures.py

    # Method 3: Run a specific test with pytest
    pytest tests/family/test_family_measures.py::test_example_four_values -v
"""

import itertools
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from factored_info.core import Distribution, StateSpace, multi_information
from factored_info.family import (
    MarginFamily,
    Pairing,
    fmi,
    generic_fiber_dimension,
    i_lambda,
    i_lambda_terms,
    margin_row_labels,
    margin_statistics_matrix,
    marginal_polytope_dimension,
    maximum_i_lambda,
    sfmi,
)


# Test configuration
LOG2 = math.log(2)
TOLERANCE = 1e-10
COPIES = Distribution.uniform_on_strings(["0000", "1111"], 2)
CENTROID = Distribution.uniform_on_strings(["0000", "0101", "1010", "1111"], 2)


def test_example_four_values():
    """Four perfect binary copies"""
    assert math.isclose(multi_information(COPIES), 3 * LOG2)
    assert math.isclose(fmi(COPIES), LOG2)
    assert math.isclose(sfmi(COPIES, Pairing.identity(2)), LOG2)
    assert math.isclose(sfmi(COPIES, Pairing.from_one_based([2, 1])), LOG2)


def test_sfmi_depends_on_pairing():
    """The identity centroid correlates X_i with Y_i only"""
    assert math.isclose(sfmi(CENTROID, Pairing.identity(2)), LOG2)
    assert math.isclose(sfmi(CENTROID, Pairing.from_one_based([2, 1])), 0.0, abs_tol=TOLERANCE)


def test_full_family_is_multi_information():
    rng = np.random.default_rng(7)
    space = StateSpace((2, 3, 2))
    for _ in range(20):
        p = Distribution.from_array(space, rng.dirichlet(np.ones(space.total)))
        assert math.isclose(i_lambda(p, MarginFamily.full(3)), multi_information(p), abs_tol=TOLERANCE)


def test_singletons_contribute_zero():
    fam = MarginFamily.of(4, [(0,), (1, 2, 3)])
    terms = i_lambda_terms(COPIES, fam)
    assert terms[0] == ((0,), 0.0)
    assert math.isclose(i_lambda(COPIES, fam), LOG2)


def test_measure_input_errors():
    with pytest.raises(ValueError):
        i_lambda(COPIES, MarginFamily.all_pairs(3))
    with pytest.raises(ValueError):
        fmi(Distribution.uniform(StateSpace.homogeneous(1, 2)))
    with pytest.raises(ValueError):
        sfmi(Distribution.uniform(StateSpace.homogeneous(3, 2)), Pairing.identity(1))
    with pytest.raises(ValueError):
        sfmi(Distribution.uniform(StateSpace((2, 3))), Pairing.identity(1))
    with pytest.raises(ValueError):
        sfmi(COPIES, Pairing.identity(1))


def test_maximum_i_lambda_is_attained_by_copies():
    for fam in (MarginFamily.all_pairs(4), MarginFamily.of(4, [(0, 1, 2), (2, 3)]),
                MarginFamily.sfmi(Pairing.identity(2))):
        assert math.isclose(i_lambda(COPIES, fam), maximum_i_lambda(fam, 2))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=9), min_size=16, max_size=16).filter(any))
def test_i_lambda_stays_below_maximum(counts):
    p = Distribution(StateSpace.homogeneous(4, 2), tuple(Fraction(c, sum(counts)) for c in counts))
    for fam in (MarginFamily.all_pairs(4), MarginFamily.sfmi(Pairing.from_one_based([2, 1]))):
        value = i_lambda(p, fam)
        assert 0.0 <= value <= maximum_i_lambda(fam, 2) + TOLERANCE


def test_margin_statistics_matrix():
    space = StateSpace.homogeneous(3, 2)
    fam = MarginFamily.all_pairs(3)
    matrix = margin_statistics_matrix(fam, space)
    assert matrix.shape == (12, 8)
    assert matrix.dtype == np.int64
    # Every column has exactly one 1 per margin block
    assert (matrix.sum(axis=0) == len(fam)).all()
    labels = margin_row_labels(fam, space)
    assert labels[0] == ((0, 1), (0, 0))
    assert labels[-1] == ((1, 2), (1, 1))
    # Column 0b011 = state (0, 1, 1) hits rows (01, 01), (02, 01), (12, 11)
    assert list(np.flatnonzero(matrix[:, 3])) == [1, 5, 11]
    # Margins are the matrix applied to the weight vector
    weights = np.array([float(w) for w in Distribution.uniform_on_strings(["000", "111"], 2).weights])
    assert list(matrix @ weights) == [0.5, 0, 0, 0.5] * 3


def test_marginal_polytope_dimension():
    assert marginal_polytope_dimension(3, 2, 2) == 6
    assert marginal_polytope_dimension(4, 3, 1) == 8
    assert marginal_polytope_dimension(3, 2, 3) == 7
    assert generic_fiber_dimension(3, 2, 3) == 0
    assert generic_fiber_dimension(3, 2, 2) == 1
    with pytest.raises(ValueError):
        marginal_polytope_dimension(3, 1, 1)
    with pytest.raises(ValueError):
        marginal_polytope_dimension(3, 2, 4)


def test_statistics_rank_matches_dimension():
    """The matrix of all margins up to order q has rank dimension + 1"""
    for n, N, q in [(3, 2, 2), (3, 3, 1), (4, 2, 2)]:
        space = StateSpace.homogeneous(n, N)
        fam = MarginFamily.of(n, [s for k in range(1, q + 1)
                                  for s in itertools.combinations(range(n), k)])
        rank = np.linalg.matrix_rank(margin_statistics_matrix(fam, space).astype(float))
        assert rank == marginal_polytope_dimension(n, N, q) + 1


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
