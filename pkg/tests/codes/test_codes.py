"""Test script for max-distance codes, code partitions and bipartite matchings

Usage:
    # Method 1: Run directly (from project root)
    python tests/codes/test_codes.py

    # Method 2: Run with pytest
    pytest tests/codes/test_codes.py

    # Method 3: Run a specific test with pytest
    pytest tests/codes/test_codes.py::test_code_counts -v
"""

import itertools
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from factored_info.codes import (
    Code,
    CodePartition,
    bipartite_matchings_partition,
    count_max_distance_codes,
    count_partitions,
    enumerate_all_partitions,
    enumerate_max_distance_codes,
    exhaustive_partitions,
    hamming_distance,
    partition_into_codes,
)
from factored_info.core import all_strings
from factored_info.errors import CapExceededError


# Test configuration
CODE_COUNTS = {(2, 2): 2, (2, 3): 4, (2, 4): 8, (3, 2): 6, (3, 3): 36, (4, 2): 24}
PARTITION_COUNTS = {(2, 2): 1, (2, 3): 1, (3, 2): 2, (3, 3): 4}


def test_hamming_distance():
    assert hamming_distance("0101", "0110") == 2
    assert hamming_distance((0, 1, 2), (0, 1, 2)) == 0
    with pytest.raises(ValueError):
        hamming_distance("01", "011")


def test_code_validation():
    code = Code.from_strings(["11", "00"], 2)
    assert code.words == ((0, 0), (1, 1))
    assert code.is_max_distance
    assert "11" in code and "01" not in code
    assert code.to_distribution().prob((1, 1)) == Fraction(1, 2)
    assert not Code.from_strings(["00", "01"], 2).is_max_distance
    with pytest.raises(ValueError):
        Code.from_strings(["00", "00"], 2)
    with pytest.raises(ValueError):
        Code.from_strings(["02"], 2)


def test_code_counts():
    for (N, n), expected in CODE_COUNTS.items():
        codes = list(enumerate_max_distance_codes(N, n))
        assert len(codes) == expected == count_max_distance_codes(N, n)
        assert len(set(codes)) == expected
        assert all(c.is_max_distance for c in codes)


def test_codes_match_brute_force():
    """Every N-subset of strings at pairwise distance n shows up exactly once"""
    for N, n in [(2, 3), (3, 2)]:
        brute = {
            frozenset(words)
            for words in itertools.combinations(all_strings(N, n), N)
            if all(hamming_distance(a, b) == n for a, b in itertools.combinations(words, 2))
        }
        enumerated = {frozenset(c.words) for c in enumerate_max_distance_codes(N, n)}
        assert enumerated == brute


def test_coordinate_permutation():
    code = Code.from_strings(["012", "120", "201"], 3)
    assert code.coordinate_permutation(0) == (0, 1, 2)
    assert code.coordinate_permutation(1) == (1, 2, 0)
    with pytest.raises(ValueError):
        Code.from_strings(["00", "01"], 2).coordinate_permutation(1)


def test_code_cap():
    with pytest.raises(CapExceededError):
        enumerate_max_distance_codes(3, 3, cap=35)
    with pytest.raises(ValueError):
        enumerate_max_distance_codes(1, 2)


def test_shift_partition():
    for N, n in [(2, 2), (2, 4), (3, 2), (3, 3), (4, 2)]:
        partition = partition_into_codes(N, n)
        assert len(partition.parts) == N ** (n - 1)
        covered = [w for part in partition.parts for w in part.words]
        assert sorted(covered) == all_strings(N, n)


def test_partition_counts():
    for (N, n), expected in PARTITION_COUNTS.items():
        partitions = list(enumerate_all_partitions(N, n))
        assert len(partitions) == expected == count_partitions(N, n)
        assert len(set(partitions)) == expected


def test_partition_validation():
    with pytest.raises(ValueError):
        CodePartition((Code.from_strings(["00", "11"], 2),))
    with pytest.raises(ValueError):
        CodePartition((Code.from_strings(["00", "11"], 2), Code.from_strings(["00", "11"], 2)))
    with pytest.raises(CapExceededError):
        enumerate_all_partitions(3, 3, cap=3)


def test_exhaustive_partitions_include_cosets():
    for N, n in [(2, 3), (3, 2)]:
        assert set(exhaustive_partitions(N, n)) == set(enumerate_all_partitions(N, n))
    # Four symbols admit partitions beyond the coset family
    assert len(exhaustive_partitions(4, 2)) == 24
    assert len(list(enumerate_all_partitions(4, 2))) == 6


def test_bipartite_matchings():
    for N in range(1, 7):
        matchings = bipartite_matchings_partition(N)
        assert len(matchings) == N
        edges = [e for m in matchings for e in m]
        assert sorted(edges) == [(u, v) for u in range(N) for v in range(N)]
        for m in matchings:
            assert sorted(u for u, _ in m) == list(range(N))
            assert sorted(v for _, v in m) == list(range(N))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
