"""Test script for SFMI maximizer polytopes, their simplices and the atlas

Usage:
    # Method 1: Run directly (from project root)
    python tests/atlas/test_sfmi_atlas.py

    # Method 2: Run with pytest
    pytest tests/atlas/test_sfmi_atlas.py

    # Method 3: Run a specific test with pytest
    pytest tests/atlas/test_sfmi_atlas.py::test_identity_pairing_polytopes -v
"""

import importlib
import math
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

import factored_info.atlas.sfmi as sfmi_module
from factored_info.atlas import (
    build_sfmi_atlas,
    build_sfmi_polytope,
    centroid_is_blockMI_maximizer,
    enumerate_sfmi_polytopes,
    is_I_maximizer,
    margin_choices,
    max_entropy_point,
    pairing_centroid_overlaps,
    sfmi_support,
    solve_maximizer_margin_specifications,
    uniform_point,
)
from factored_info.codes import Code
from factored_info.core import Distribution, StateSpace, entropy, format_state, parse_state
from factored_info.errors import CapExceededError
from factored_info.family import MarginFamily, Pairing, sfmi
from factored_info.polytope import margin_specified_polytope


# Test configuration
LOG2 = math.log(2)
TOLERANCE = 1e-10
SWAP = Pairing.from_one_based([2, 1])
IDENTITY_VERTEX_PAIRS = [
    [["0000", "1111"], ["0101", "1010"]],
    [["0001", "1110"], ["0100", "1011"]],
    [["0010", "1101"], ["0111", "1000"]],
    [["0011", "1100"], ["0110", "1001"]],
]
SWAP_VERTEX_PAIRS = [
    [["0000", "1111"], ["1001", "0110"]],
    [["0010", "1101"], ["0100", "1011"]],
    [["0001", "1110"], ["1000", "0111"]],
    [["0011", "1100"], ["0101", "1010"]],
]
IDENTITY_CENTROIDS = [
    ["0000", "0101", "1010", "1111"], ["0010", "0111", "1000", "1101"],
    ["0011", "0110", "1001", "1100"], ["0001", "0100", "1011", "1110"],
]
SWAP_CENTROIDS = [
    ["0000", "0110", "1001", "1111"], ["0010", "0100", "1011", "1101"],
    ["0011", "0101", "1010", "1100"], ["0001", "0111", "1000", "1110"],
]


def _vertex_supports(poly):
    return frozenset(
        frozenset(poly.vertex_distribution(k).support()) for k in range(len(poly.report.vertices))
    )


def _as_support_sets(groups):
    return {frozenset(frozenset(parse_state(s) for s in pair) for pair in group) for group in groups}


def test_identity_pairing_polytopes():
    polytopes = enumerate_sfmi_polytopes(2, 2)
    assert len(polytopes) == 4
    assert {_vertex_supports(p) for p in polytopes} == _as_support_sets(IDENTITY_VERTEX_PAIRS)
    assert {frozenset(p.centroid.support()) for p in polytopes} == {
        frozenset(parse_state(s) for s in group) for group in IDENTITY_CENTROIDS
    }
    for poly in polytopes:
        assert poly.report.affine_dimension == poly.expected_dimension == 1
        assert poly.report.vertex_span_dimension == 1
        assert len(poly.code_vertices) == 2
        for k in range(len(poly.report.vertices)):
            assert math.isclose(sfmi(poly.vertex_distribution(k), Pairing.identity(2)), LOG2)


def test_swap_pairing_polytopes():
    polytopes = enumerate_sfmi_polytopes(2, 2, SWAP)
    assert {_vertex_supports(p) for p in polytopes} == _as_support_sets(SWAP_VERTEX_PAIRS)
    assert {frozenset(p.centroid.support()) for p in polytopes} == {
        frozenset(parse_state(s) for s in group) for group in SWAP_CENTROIDS
    }


def test_centroids():
    for poly in enumerate_sfmi_polytopes(2, 2):
        assert centroid_is_blockMI_maximizer(poly)
        point = max_entropy_point(poly)
        assert math.isclose(entropy(point), 2 * LOG2)
        # Every interior point of the segment maximizes SFMI but not I
        assert math.isclose(sfmi(point, Pairing.identity(2)), LOG2)
        assert not is_I_maximizer(point)


def test_pairings_share_no_centroids():
    report = pairing_centroid_overlaps(2, 2)
    assert [p.one_based() for p in report.pairings] == [[1, 2], [2, 1]]
    assert report.overlaps == {(0, 1): 0}


def test_three_symbol_polytope():
    """One of the 36 polytopes for two pairs of three-valued variables"""
    codes = margin_choices(3, 2)
    assert len(codes) == 36
    poly = build_sfmi_polytope(3, 2, codes[1], Pairing.identity(2))
    assert [format_state(s) for s in poly.support] == [
        "0000", "0102", "0201", "1010", "1112", "1211", "2020", "2122", "2221",
    ]
    assert poly.system.row_count == 6
    assert poly.report.rank == 5
    assert poly.report.affine_dimension == 4
    assert len(poly.report.kernel_basis) == 4
    assert len(poly.code_vertices) == 6
    assert len(poly.simplices) == 2
    for simplex in poly.simplices:
        assert len(simplex) == 3
    assert all(w in (0, Fraction(1, 9)) for w in poly.centroid.weights)


def test_sfmi_support_validation():
    good = Code.from_strings(["00", "11"], 2)
    with pytest.raises(ValueError):
        sfmi_support(2, 2, [good], Pairing.identity(2))
    with pytest.raises(ValueError):
        sfmi_support(2, 1, [Code.from_strings(["00", "01"], 2)], Pairing.identity(1))
    with pytest.raises(CapExceededError):
        build_sfmi_polytope(2, 2, [good, good], Pairing.identity(2), cap=3)


def test_atlas_summary():
    atlas = build_sfmi_atlas(2, 2)
    assert atlas.summary() == {
        "polytopes": 4,
        "dimension": 1,
        "vertices": 8,
        "code_vertices": 8,
        "simplices": 4,
        "distinct_centroids": 4,
        "I_maximizers": 8,
        "blockMI_maximizers": 24,
    }
    single = build_sfmi_atlas(2, 2, SWAP, margin_choice=margin_choices(2, 2)[0])
    assert len(single.polytopes) == 1
    assert single.pairing == SWAP


def test_binary_atlas_with_three_pairs():
    atlas = build_sfmi_atlas(2, 3)
    assert len(atlas.polytopes) == 8
    supports = [set(poly.support) for poly in atlas.polytopes]
    assert sum(len(s) for s in supports) == len(set().union(*supports)) == 64
    for poly in atlas.polytopes:
        assert poly.report.affine_dimension == poly.expected_dimension == 4
        assert len(poly.report.vertices) == 6
        assert len(poly.code_vertices) == 4
        assert len(poly.simplices) == 1
        assert centroid_is_blockMI_maximizer(poly)
    summary = atlas.summary()
    assert summary["code_vertices"] == summary["I_maximizers"] == 32
    assert summary["distinct_centroids"] == 8


def test_polytope_builds_its_system_once(monkeypatch):
    calls = []
    original = sfmi_module.margin_constraint_system

    def counting(*args, **kwargs):
        calls.append(args)
        return original(*args, **kwargs)

    monkeypatch.setattr(sfmi_module, "margin_constraint_system", counting)
    monkeypatch.setattr(importlib.import_module("factored_info.polytope.margins"), "margin_constraint_system", counting)
    poly = build_sfmi_polytope(2, 2, margin_choices(2, 2)[0], Pairing.identity(2))
    assert len(calls) == 1
    assert poly.report.column_labels == poly.system.column_labels


def test_maximizing_margins_of_a_path():
    """Margins {1,2} and {2,3}: every maximizing choice is a single I maximizer"""
    space = StateSpace.homogeneous(3, 2)
    fam = MarginFamily.from_one_based(3, [[1, 2], [2, 3]])
    results = solve_maximizer_margin_specifications(2, fam)
    assert len(results) == 4
    for result in results:
        assert result.report.is_point
        assert is_I_maximizer(result.report.vertex_distribution(space, 0))


def test_maximizing_margins_of_two_blocks():
    """Margins {1,2} and {3,4}: a segment whose midpoint is not an I maximizer"""
    space = StateSpace.homogeneous(4, 2)
    fam = MarginFamily.from_one_based(4, [[1, 2], [3, 4]])
    results = solve_maximizer_margin_specifications(2, fam)
    assert len(results) == 4
    first = results[0]
    assert first.report.vertex_span_dimension == 1
    witness = uniform_point(first.report, space)
    assert [format_state(s) for s in witness.support()] == ["0000", "0011", "1100", "1111"]
    assert not is_I_maximizer(witness)
    with pytest.raises(ValueError):
        solve_maximizer_margin_specifications(2, MarginFamily.of(2, [(0,), (1,)]))


def test_uniform_point_needs_a_nonempty_polytope():
    path = MarginFamily.from_one_based(3, [[1, 2], [2, 3]])
    pair_space = StateSpace.homogeneous(2, 2)
    margins = [Distribution.uniform_on_strings(["00", "11"], 2), Distribution.point_mass(pair_space, (0, 0))]
    empty = margin_specified_polytope(StateSpace.homogeneous(3, 2), path, margins)
    with pytest.raises(ValueError):
        uniform_point(empty, StateSpace.homogeneous(3, 2))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
