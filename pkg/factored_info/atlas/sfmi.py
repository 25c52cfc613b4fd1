"""Transportation polytopes of SFMI maximizers and their simplices.

Variables are ordered (X_1..X_n, Y_1..Y_n). A distribution maximizes the
SFMI for a pairing pi exactly when every pair margin p(X_i, Y_pi(i)) is a
mutual-information maximizer, i.e. uniform on a code {(k, sigma_i(k))}. One
choice of codes fixes y_pi(i) = sigma_i(x_i), so the support has one state
per x string and the maximizers with those margins form a transportation
polytope.
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..codes.codes import Code, enumerate_all_partitions, enumerate_max_distance_codes
from ..core.distribution import Distribution
from ..core.measures import block_mutual_information, entropy
from ..core.state_space import BlockSplit, State, StateSpace, all_strings
from ..errors import InvariantViolation, check_cap
from ..family.family import MarginFamily, Pairing
from ..polytope.linalg import rank_of
from ..polytope.margins import margin_constraint_system, margin_specified_polytope
from ..polytope.vertices import ConstraintSystem, PolytopeReport, analyze_system
from ..registry import OperationModule, operation
from ..settings import get_global_settings
from .maximizers import (
    count_blockMI_maximizers,
    count_I_maximizers,
    enumerate_I_maximizers,
    is_blockMI_maximizer,
    is_I_maximizer,
)

logger = logging.getLogger(__name__)

_MODULE = OperationModule.MAXIMIZER_ATLAS


@dataclass(frozen=True)
class SfmiPolytope:
    """One polytope of SFMI maximizers, fixed by a choice of pair-margin codes"""
    N: int
    n: int
    margin_choice: Tuple[Code, ...]
    pairing: Pairing
    support: Tuple[State, ...]
    system: ConstraintSystem
    report: PolytopeReport
    code_vertices: Tuple[int, ...]
    simplices: Tuple[Tuple[int, ...], ...]
    centroid: Distribution

    @property
    def space(self) -> StateSpace:
        return StateSpace.homogeneous(2 * self.n, self.N)

    @property
    def expected_dimension(self) -> int:
        return self.N ** self.n - 1 - self.n * (self.N - 1)

    def vertex_distribution(self, k: int) -> Distribution:
        return self.report.vertex_distribution(self.space, k)


def _check_margin_code(code: Code, N: int) -> Tuple[int, ...]:
    if code.N != N or code.length != 2 or not code.is_max_distance:
        raise ValueError(
            f"Margin code {code.to_strings()} is not a length-2 code of {N} words at distance 2"
        )
    return code.coordinate_permutation(1)


def sfmi_support(N: int, n: int, margin_choice: Sequence[Code], pairing: Pairing) -> List[State]:
    """States (x, y) with y_pi(i) = sigma_i(x_i) for every i, sorted by x"""
    if len(margin_choice) != n or pairing.n != n:
        raise ValueError(f"Need {n} margin codes and a pairing of {n} pairs")
    sigmas = [_check_margin_code(code, N) for code in margin_choice]
    support = []
    for x in all_strings(N, n):
        y = [0] * n
        for i, j in enumerate(pairing.match):
            y[j] = sigmas[i][x[i]]
        support.append(x + tuple(y))
    return support


@operation("build_sfmi_polytope", _MODULE)
def build_sfmi_polytope(N: int, n: int, margin_choice: Sequence[Code], pairing: Pairing,
                        cap: Optional[int] = None) -> SfmiPolytope:
    """Analyze the polytope of SFMI maximizers with the given pair margins"""
    support = sfmi_support(N, n, margin_choice, pairing)
    limit = get_global_settings().support_cap if cap is None else cap
    check_cap("support_cap", limit, len(support))
    space = StateSpace.homogeneous(2 * n, N)
    fam = MarginFamily.sfmi(pairing)
    margins = [code.to_distribution() for code in margin_choice]
    system = margin_constraint_system(space, fam, margins)
    report = analyze_system(system)
    if list(system.column_labels) != support:
        raise InvariantViolation("Zero-forcing left a support different from the code-determined one")

    expected = N ** n - 1 - n * (N - 1)
    if report.is_empty or report.affine_dimension != expected:
        raise InvariantViolation(
            f"SFMI polytope has affine dimension {report.affine_dimension}, expected {expected}"
        )

    vertices = report.vertex_distributions(space)
    code_vertices = tuple(k for k, v in enumerate(vertices) if is_I_maximizer(v))
    index_of = {frozenset(v.support()): k for k, v in enumerate(vertices)}
    y_of = {s[:n]: s for s in support}

    simplices = []
    for partition in enumerate_all_partitions(N, n):
        simplex = []
        for part in partition.parts:
            key = frozenset(y_of[x] for x in part.words)
            if key not in index_of or index_of[key] not in code_vertices:
                raise InvariantViolation(f"Code {part.to_strings()} has no code vertex in the polytope")
            simplex.append(index_of[key])
        simplices.append(tuple(simplex))

    centroid = Distribution.uniform(space, support)
    poly = SfmiPolytope(
        N=N, n=n, margin_choice=tuple(margin_choice), pairing=pairing, support=tuple(support),
        system=system, report=report, code_vertices=code_vertices, simplices=tuple(simplices),
        centroid=centroid,
    )
    _check_simplices(poly, vertices)
    logger.debug(
        f"SFMI polytope {[c.to_strings() for c in margin_choice]}: {len(report.vertices)} vertices, "
        f"{len(code_vertices)} code vertices, {len(simplices)} simplices"
    )
    return poly


def _check_simplices(poly: SfmiPolytope, vertices: Sequence[Distribution]) -> None:
    for simplex in poly.simplices:
        members = [vertices[k] for k in simplex]
        supports = [set(v.support()) for v in members]
        if sum(len(s) for s in supports) != len(set().union(*supports)):
            raise InvariantViolation(f"Simplex {simplex} has overlapping vertex supports")
        weights = tuple(sum(ws) / len(members) for ws in zip(*(v.weights for v in members)))
        if weights != poly.centroid.weights:
            raise InvariantViolation(f"Simplex {simplex} does not have the polytope centroid")
        base = members[0].weights
        differences = [tuple(a - b for a, b in zip(v.weights, base)) for v in members[1:]]
        if rank_of(differences) != len(members) - 1:
            raise InvariantViolation(f"Simplex {simplex} has affinely dependent vertices")


def margin_choices(N: int, n: int) -> List[Tuple[Code, ...]]:
    """All n-tuples of pair-margin codes, in lexicographic order"""
    codes = list(enumerate_max_distance_codes(N, 2))
    return list(itertools.product(codes, repeat=n))


@operation("enumerate_sfmi_polytopes", _MODULE)
def enumerate_sfmi_polytopes(N: int, n: int, pairing: Optional[Pairing] = None,
                             cap: Optional[int] = None) -> List[SfmiPolytope]:
    """All N!^n SFMI polytopes for a pairing, with the disjoint-union checks.

    Supports must be pairwise disjoint, and the code vertices of all
    polytopes together must be exactly the multi-information maximizers of
    the 2n variables.
    """
    pairing = pairing or Pairing.identity(n)
    settings = get_global_settings()
    limit = settings.polytope_cap if cap is None else cap
    check_cap("polytope_cap", limit, math.factorial(N) ** n)
    check_cap("support_cap", settings.support_cap, N ** n)
    choices = margin_choices(N, n)

    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        polytopes = list(pool.map(lambda choice: build_sfmi_polytope(N, n, choice, pairing), choices))

    seen: Dict[State, int] = {}
    for k, poly in enumerate(polytopes):
        for state in poly.support:
            if state in seen:
                raise InvariantViolation(f"Polytopes {seen[state]} and {k} share support state {state}")
            seen[state] = k

    code_supports = {
        frozenset(poly.vertex_distribution(k).support()) for poly in polytopes for k in poly.code_vertices
    }
    maximizers = enumerate_I_maximizers(N, 2 * n)
    if code_supports != maximizers.supports():
        raise InvariantViolation("Code vertices do not coincide with the multi-information maximizers")
    logger.info(f"Enumerated {len(polytopes)} SFMI polytopes for N={N}, n={n}, pairing={pairing.one_based()}")
    return polytopes


@operation("centroid_is_blockMI_maximizer", _MODULE)
def centroid_is_blockMI_maximizer(poly: SfmiPolytope) -> bool:
    """Exact block-MI maximizer test of the centroid, plus the value n log N within tolerance"""
    if not is_blockMI_maximizer(poly.centroid, poly.n):
        return False
    value = block_mutual_information(poly.centroid, BlockSplit.halves(poly.n))
    tolerance = get_global_settings().agreement_tolerance
    return abs(value - poly.n * math.log(poly.N)) < tolerance


def max_entropy_point(poly: SfmiPolytope) -> Distribution:
    """The polytope member of largest entropy: uniform on the support, entropy n log N"""
    value = entropy(poly.centroid)
    if abs(value - poly.n * math.log(poly.N)) > get_global_settings().agreement_tolerance:
        raise InvariantViolation(f"Centroid entropy {value} differs from n log N")
    return poly.centroid


@dataclass(frozen=True)
class PairingOverlapReport:
    """Centroids of the SFMI polytopes for every pairing and how they overlap"""
    N: int
    n: int
    pairings: Tuple[Pairing, ...]
    centroids: Tuple[Tuple[Distribution, ...], ...]
    overlaps: Dict[Tuple[int, int], int]


def pairing_centroid_overlaps(N: int, n: int) -> PairingOverlapReport:
    """Centroid sets for all n! pairings and the number shared between each two"""
    pairings = tuple(Pairing.all_pairings(n))
    space = StateSpace.homogeneous(2 * n, N)
    centroids = []
    for pairing in pairings:
        centroids.append(tuple(
            Distribution.uniform(space, sfmi_support(N, n, choice, pairing))
            for choice in margin_choices(N, n)
        ))
    overlaps = {}
    for a, b in itertools.combinations(range(len(pairings)), 2):
        overlaps[(a, b)] = len(set(centroids[a]) & set(centroids[b]))
    return PairingOverlapReport(N, n, pairings, tuple(centroids), overlaps)


@dataclass(frozen=True)
class SfmiAtlas:
    N: int
    n: int
    pairing: Pairing
    polytopes: Tuple[SfmiPolytope, ...]

    def summary(self) -> Dict[str, int]:
        centroids = {poly.centroid for poly in self.polytopes}
        return {
            "polytopes": len(self.polytopes),
            "dimension": self.N ** self.n - 1 - self.n * (self.N - 1),
            "vertices": sum(len(poly.report.vertices) for poly in self.polytopes),
            "code_vertices": sum(len(poly.code_vertices) for poly in self.polytopes),
            "simplices": sum(len(poly.simplices) for poly in self.polytopes),
            "distinct_centroids": len(centroids),
            "I_maximizers": count_I_maximizers(self.N, 2 * self.n),
            "blockMI_maximizers": count_blockMI_maximizers(self.N, self.n),
        }


def build_sfmi_atlas(N: int, n: int, pairing: Optional[Pairing] = None,
                     margin_choice: Optional[Sequence[Code]] = None) -> SfmiAtlas:
    """All polytopes for a pairing, or the single one for a given margin choice"""
    pairing = pairing or Pairing.identity(n)
    if margin_choice is not None:
        polytopes = [build_sfmi_polytope(N, n, margin_choice, pairing)]
    else:
        polytopes = enumerate_sfmi_polytopes(N, n, pairing)
    return SfmiAtlas(N, n, pairing, tuple(polytopes))


@dataclass(frozen=True)
class MarginChoiceResult:
    """Polytope of joint distributions with one choice of maximizing margins"""
    choice: Tuple[Distribution, ...]
    report: PolytopeReport


def solve_maximizer_margin_specifications(N: int, fam: MarginFamily) -> List[MarginChoiceResult]:
    """Margin-specified polytopes for every combination of maximizing margins.

    Only the sets with at least two variables are constrained; a singleton
    set contributes I = 0 for every margin and leaves its variable free.
    """
    sets = [s for s in fam.sets if len(s) > 1]
    if not sets:
        raise ValueError(f"Family {fam.one_based()} has no set with two or more variables")
    constrained = MarginFamily.of(fam.n, sets)
    space = StateSpace.homogeneous(fam.n, N)
    options = [enumerate_I_maximizers(N, len(s)).distributions for s in constrained.sets]
    combos = list(itertools.product(*options))

    def _solve(choice: Tuple[Distribution, ...]) -> MarginChoiceResult:
        return MarginChoiceResult(choice, margin_specified_polytope(space, constrained, choice))

    with ThreadPoolExecutor(max_workers=get_global_settings().threads) as pool:
        results = list(pool.map(_solve, combos))
    feasible = sum(1 for r in results if not r.report.is_empty)
    logger.info(f"{feasible} of {len(results)} maximizing margin choices for {fam.one_based()} are realizable")
    return results


def uniform_point(report: PolytopeReport, space: StateSpace) -> Distribution:
    """Average of the vertices of a nonempty report, a point in its relative interior"""
    if report.is_empty:
        raise ValueError("Empty polytope has no points")
    count = len(report.vertices)
    weights = [sum(column) / count for column in zip(*report.vertices)]
    return Distribution.from_mapping(space, dict(zip(report.column_labels, weights)), exact=True)
