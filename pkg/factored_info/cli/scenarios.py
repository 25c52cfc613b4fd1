"""Built-in scenarios: the worked examples as data, each with a runner of exact
and numeric checks.

The catalog lives in scenarios.json next to this module. Every scenario has
a ``kind`` naming the runner that interprets its parameters and expectations.
"""

import itertools
import json
import logging
import math
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..atlas.maximizers import (
    enumerate_blockMI_maximizers,
    enumerate_I_maximizers,
)
from ..atlas.sfmi import (
    build_sfmi_polytope,
    centroid_is_blockMI_maximizer,
    enumerate_sfmi_polytopes,
    max_entropy_point,
    uniform_point,
)
from ..codes.codes import (
    Code,
    bipartite_matchings_partition,
    count_max_distance_codes,
    count_partitions,
    enumerate_all_partitions,
    enumerate_max_distance_codes,
    hamming_distance,
    partition_into_codes,
)
from ..core.distribution import Distribution
from ..core.formatting import distribution_to_dict
from ..core.measures import (
    block_mutual_information,
    chain_rule_terms,
    conditional_entropy,
    entropy,
    kl_divergence,
    marginal,
    multi_information,
    product_of_marginals,
)
from ..core.state_space import BlockSplit, StateSpace, format_state
from ..family.family import MarginFamily, Pairing, is_connected_covering
from ..family.measures import (
    fmi,
    i_lambda,
    margin_statistics_matrix,
    marginal_polytope_dimension,
    maximum_i_lambda,
    sfmi,
)
from ..polytope.linalg import rank_of, rational_rank_and_kernel
from ..polytope.margins import margin_specified_polytope
from ..polytope.vertices import enumerate_vertices
from ..search.objectives import Measure, MeasureKind, multi_information_gradient
from ..search.optimizer import SearchConfig, maximize_measure, sfmi_margin_distance
from ..search.theorem import verify_theorem_fmi
from ..settings import get_global_settings
from .commands import cmd_atlas, cmd_codes, cmd_measure, cmd_optimize, cmd_polytope
from .io import write_json

logger = logging.getLogger(__name__)

CATALOG_PATH = Path(__file__).with_name("scenarios.json")


class ScenarioDocument(BaseModel):
    name: str = Field(..., min_length=1)
    kind: str
    description: str = ""
    parameters: Dict[str, Any] = Field(default_factory=dict)
    expected: Dict[str, Any] = Field(default_factory=dict)


class ScenarioCatalog(BaseModel):
    schema_version: Literal[1]
    scenarios: List[ScenarioDocument]

    @model_validator(mode="after")
    def _unique_names(self) -> "ScenarioCatalog":
        names = [s.name for s in self.scenarios]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ValueError(f"Duplicate scenario names: {duplicates}")
        return self

    def get(self, name: str) -> ScenarioDocument:
        for scenario in self.scenarios:
            if scenario.name == name:
                return scenario
        raise KeyError(name)

    @property
    def names(self) -> List[str]:
        return [s.name for s in self.scenarios]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ScenarioOutcome:
    name: str
    checks: List[Check] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    def check(self, name: str, condition: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(condition), detail))
        if not condition:
            logger.warning(f"[{self.name}] check failed: {name} {detail}")


def load_catalog(path: Optional[Path] = None) -> ScenarioCatalog:
    return ScenarioCatalog.model_validate_json((path or CATALOG_PATH).read_text(encoding="utf-8"))


def _uniform(strings: List[str], N: int) -> Distribution:
    return Distribution.uniform_on_strings(strings, N)


def _supports(distributions) -> set:
    return {frozenset(format_state(s) for s in p.support()) for p in distributions}


def _as_sets(lists: List[List[str]]) -> set:
    return {frozenset(words) for words in lists}


def _search_config(parameters: Dict[str, Any]) -> SearchConfig:
    return SearchConfig.model_validate(parameters.get("search", {}))


# ----------------- runners -----------------

def _run_maximizer_lists(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    N, n = params["N"], params["n"]
    i_max = enumerate_I_maximizers(N, 2 * n)
    mi_max = enumerate_blockMI_maximizers(N, n)
    out.check("I maximizers", _supports(i_max) == _as_sets(expected["I_maximizers"]),
              f"{len(i_max)} found")
    out.check("block MI maximizers", _supports(mi_max) == _as_sets(expected["blockMI_maximizers"]),
              f"{len(mi_max)} found")
    out.check("uniform weights", all(p == _uniform([format_state(s) for s in p.support()], N)
                                     for p in list(i_max) + list(mi_max)))
    out.check("disjoint sets", not (set(i_max.distributions) & set(mi_max.distributions)))
    for key, pairing in (("identity_centroids", Pairing.identity(n)),
                         ("swap_centroids", Pairing.from_one_based(params["swap_pairing"]))):
        polytopes = enumerate_sfmi_polytopes(N, n, pairing)
        centroids = [poly.centroid for poly in polytopes]
        out.check(f"{key} match", _supports(centroids) == _as_sets(expected[key]))
        out.check(f"{key} are block MI maximizers", all(mi_max.contains(c) for c in centroids))
        out.check(f"{key} pass the centroid test", all(centroid_is_blockMI_maximizer(p) for p in polytopes))


def _run_margin_coincidence(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    N, n = params["N"], params["n"]
    fam = MarginFamily.from_one_based(n, params["family"])
    space = StateSpace.homogeneous(n, N)
    out.check("connected covering", bool(is_connected_covering(fam)) == expected["connected"])
    maximizers = enumerate_I_maximizers(N, n)
    out.check("I maximizers", _supports(maximizers) == _as_sets(expected["I_maximizers"]))
    target = maximum_i_lambda(fam, N)
    tolerance = get_global_settings().agreement_tolerance
    out.check("I maximizers maximize I_lambda",
              all(abs(i_lambda(p, fam) - target) < tolerance for p in maximizers))
    options = [enumerate_I_maximizers(N, len(s)).distributions for s in fam.sets]
    points = []
    for choice in itertools.product(*options):
        report = margin_specified_polytope(space, fam, list(choice))
        if not report.is_empty:
            points.append(report)
    out.check("realizable margins give points", all(r.is_point for r in points), f"{len(points)} realizable")
    found = {uniform_point(r, space) for r in points}
    out.check("points are the I maximizers", found == set(maximizers.distributions))


def _run_sfmi_polytopes(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    N, n = params["N"], params["n"]
    pairing = Pairing.from_one_based(params["pairing"])
    polytopes = enumerate_sfmi_polytopes(N, n, pairing)
    out.check("dimensions", all(p.report.affine_dimension == expected["dimension"] for p in polytopes))
    found = set()
    for k, poly in enumerate(polytopes):
        vertices = [poly.vertex_distribution(j) for j in range(len(poly.report.vertices))]
        found.add(frozenset(frozenset(format_state(s) for s in v.support()) for v in vertices))
        out.check(f"polytope {k + 1} vertices are code vertices",
                  len(poly.code_vertices) == len(vertices))
    wanted = {frozenset(frozenset(words) for words in poly) for poly in expected["polytopes"]}
    out.check("vertex sets", found == wanted)
    out.check("max-entropy points", all(max_entropy_point(p) == p.centroid for p in polytopes))
    if "search" in params:
        space = StateSpace.homogeneous(2 * n, N)
        result = maximize_measure(Measure(MeasureKind.SFMI, pairing=pairing), space, _search_config(params))
        out.check("numeric SFMI reaches log N", abs(result.best_value - math.log(N)) < 1e-6,
                  f"best {result.best_value:.12g}")
        distances = sfmi_margin_distance(result.best_point, pairing)
        out.check("numeric optimum lies on an SFMI polytope", max(distances) < 1e-4, f"{distances}")


def _run_sfmi_system(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    N, n = params["N"], params["n"]
    choice = [Code.from_strings(words, N) for words in params["margins"]]
    poly = build_sfmi_polytope(N, n, choice, Pairing.identity(n))
    columns = [format_state(s) for s in poly.system.column_labels]
    out.check("columns", columns == expected["columns"])
    matrix = ["".join(str(int(v)) for v in row) for row in poly.system.matrix]
    out.check("matrix", matrix == expected["matrix"], f"{matrix}")
    rank, kernel = rational_rank_and_kernel(poly.system.matrix)
    out.check("rank", rank == expected["rank"] == poly.report.rank, f"rank {rank}")
    out.check("kernel dimension", len(kernel) == expected["kernel_dimension"])
    wanted_kernel = [tuple(Fraction(v) for v in row) for row in expected["kernel"]]
    out.check("kernel spans the listed vectors", rank_of(list(kernel) + wanted_kernel) == len(kernel))
    vertices = {tuple(v) for v in poly.report.vertices}
    wanted = {tuple(Fraction(v) for v in row) for row in expected["vertices"]}
    out.check("vertices", vertices == wanted, f"{len(vertices)} vertices")
    out.check("direct vertex enumeration agrees", {tuple(v) for v in enumerate_vertices(poly.system)} == vertices)
    out.check("code vertices", len(poly.code_vertices) == expected["code_vertices"])
    centroid = Fraction(expected["centroid"])
    out.check("centroid", all(w == centroid for w in (poly.centroid.prob(s) for s in poly.support)))
    code = [v for k, v in enumerate(poly.report.vertices) if k in poly.code_vertices]
    other = [v for k, v in enumerate(poly.report.vertices) if k not in poly.code_vertices]
    for label, group in (("code", code), ("non-code", other)):
        mean = tuple(sum(col) / len(group) for col in zip(*group))
        out.check(f"{label} vertices average to the centroid", all(w * N ** n == 1 for w in mean))


def _run_sfmi_atlas(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    N, n = params["N"], params["n"]
    polytopes = enumerate_sfmi_polytopes(N, n)
    out.check("polytope count", len(polytopes) == expected["polytopes"], f"{len(polytopes)}")
    out.check("dimensions", all(p.report.affine_dimension == expected["dimension"] for p in polytopes))
    out.check("ranks", all(p.report.rank == expected["rank"] for p in polytopes))
    out.check("kernels", all(len(p.report.kernel_basis) == expected["kernel_dimension"] for p in polytopes))
    out.check("rows", all(p.system.row_count == expected["rows"] for p in polytopes))
    out.check("code vertices", all(len(p.code_vertices) == expected["code_vertices"] for p in polytopes))
    out.check("simplices", all(len(p.simplices) == expected["simplices"] for p in polytopes))
    out.check("centroids maximize block MI", all(centroid_is_blockMI_maximizer(p) for p in polytopes))
    codes = params["margin_codes"]
    for item in expected["supports"]:
        choice = [Code.from_strings(codes[k - 1], N) for k in item["choice"]]
        poly = build_sfmi_polytope(N, n, choice, Pairing.identity(n))
        support = [format_state(s) for s in poly.support]
        out.check(f"support of choice {item['choice']}", sorted(support) == sorted(item["states"]))


def _run_codes(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    out.check("hamming distance", hamming_distance("0101", "1010") == 4 and hamming_distance("012", "010") == 1)
    for (N, n), count in zip(params["shapes"], expected["counts"]):
        codes = list(enumerate_max_distance_codes(N, n))
        out.check(f"code count N={N} n={n}", len(codes) == count == count_max_distance_codes(N, n),
                  f"{len(codes)}")
        out.check(f"codes distinct N={N} n={n}", len(set(codes)) == len(codes))
        out.check(f"codes at distance n N={N} n={n}", all(c.minimum_distance == n for c in codes))
        partition = partition_into_codes(N, n)
        covered = [w for part in partition.parts for w in part.words]
        out.check(f"partition N={N} n={n}",
                  len(covered) == len(set(covered)) == N ** n and len(partition.parts) == N ** (n - 1))


def _run_partitions(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    for (N, n), count in zip(params["shapes"], expected["counts"]):
        partitions = list(enumerate_all_partitions(N, n))
        out.check(f"partition count N={N} n={n}", len(partitions) == count == count_partitions(N, n),
                  f"{len(partitions)}")
        out.check(f"partitions distinct N={N} n={n}",
                  len({frozenset(p.parts) for p in partitions}) == len(partitions))
    for N in params["matching_sizes"]:
        matchings = bipartite_matchings_partition(N)
        edges = [edge for m in matchings for edge in m]
        perfect = all(len({u for u, _ in m}) == len({v for _, v in m}) == N for m in matchings)
        out.check(f"matchings N={N}", perfect and len(edges) == len(set(edges)) == N * N)


def _run_theorem_fmi(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    N, n = params["N"], params["n"]
    cfg = _search_config(params)
    for sets in params["families"]:
        fam = MarginFamily.from_one_based(n, sets)
        report = verify_theorem_fmi(N, n, fam, cfg)
        out.check(f"{sets} connected", report.connected == expected["connected"])
        out.check(f"{sets} holds", report.passed,
                  f"matched {report.runs_matched}/{report.runs_at_maximum}" if report.connected
                  else f"witness I = {report.witness_i}")
        if not report.connected and "witness_I_over_log_N" in expected:
            value = expected["witness_I_over_log_N"] * math.log(N)
            out.check(f"{sets} witness I", report.witness_i is not None
                      and abs(report.witness_i - value) < get_global_settings().agreement_tolerance)
            out.check(f"{sets} witness dimension", report.witness_dimension == expected["witness_dimension"])


def _run_measures(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    N = params["N"]
    p = _uniform(params["support"], N)
    n = p.space.n
    log_n = math.log(N)
    tolerance = get_global_settings().agreement_tolerance

    def close(value: float, wanted: float) -> bool:
        return abs(value - wanted) < tolerance

    out.check("entropy", close(entropy(p), expected["entropy_over_log_N"] * log_n))
    out.check("multi-information", close(multi_information(p), expected["I_over_log_N"] * log_n))
    out.check("divergence form", close(kl_divergence(p, product_of_marginals(p)), multi_information(p)))
    out.check("marginal", marginal(p, [0, 1]) == _uniform(["00", "11"], N))
    out.check("chain rule", close(sum(chain_rule_terms(p)), entropy(p)))
    out.check("conditional entropy", close(conditional_entropy(p, [1], [0]), 0.0))
    out.check("block MI", close(block_mutual_information(p, BlockSplit.halves(n // 2)), log_n))
    out.check("FMI", close(fmi(p), expected["FMI_over_log_N"] * log_n))
    out.check("SFMI", close(sfmi(p, Pairing.identity(n // 2)), expected["SFMI_over_log_N"] * log_n))
    uniform = Distribution.uniform(StateSpace.homogeneous(n, N))
    gradient = multi_information_gradient(uniform)
    out.check("gradient at the uniform distribution", all(abs(g + (n - 1)) < 1e-12 for g in gradient))
    for item in expected["marginal_polytope_dimension"]:
        value = marginal_polytope_dimension(item["n"], item["N"], item["q"])
        out.check(f"marginal polytope dimension {item}", value == item["value"])
    matrix = margin_statistics_matrix(MarginFamily.all_pairs(3), StateSpace.homogeneous(3, 2))
    out.check("statistics matrix shape", list(matrix.shape) == expected["statistics_shape"])


def _run_cli(out: ScenarioOutcome, params: Dict[str, Any], expected: Dict[str, Any]) -> None:
    p = _uniform(params["support"], 2)
    log_2 = math.log(2)
    with tempfile.TemporaryDirectory() as tmp:
        folder = Path(tmp)
        write_json(distribution_to_dict(p), folder / "p.json")
        measured = cmd_measure(folder / "p.json", "I")
        out.check("measure I", abs(measured.payload["value"] - expected["I_over_log_N"] * log_2) < 1e-10)
        measured = cmd_measure(folder / "p.json", "SFMI")
        out.check("measure SFMI", abs(measured.payload["value"] - expected["SFMI_over_log_N"] * log_2) < 1e-10)

        atlas = cmd_atlas(2, 2, out=folder / "atlas.json")
        reloaded = json.loads((folder / "atlas.json").read_text(encoding="utf-8"))
        out.check("atlas file", reloaded == json.loads(json.dumps(atlas.payload))
                  and reloaded["summary"]["polytopes"] == expected["atlas_polytopes"])

        cfg = _search_config(params)
        optimized = cmd_optimize("I", 2, 2, config=cfg)
        out.check("optimize I", abs(optimized.payload["bestValue"] - log_2) < 1e-6
                  and optimized.payload["matchedMaximizer"] is not None)

        codes = cmd_codes(3, 2, partitions=True, matchings=True)
        out.check("codes", codes.payload["count"] == expected["codes_N3_n2"] and len(codes.payload["partitions"]) == 2)

        margins = {
            "cardinalities": [2, 2, 2],
            "family": {"n": 3, "sets": [[1, 2], [2, 3]]},
            "margins": [distribution_to_dict(_uniform(["00", "11"], 2))] * 2,
        }
        write_json(margins, folder / "margins.json")
        polytope = cmd_polytope(folder / "margins.json")
        out.check("polytope", polytope.payload["isPoint"] and len(polytope.payload["vertices"]) == 1)


RUNNERS: Dict[str, Callable[[ScenarioOutcome, Dict[str, Any], Dict[str, Any]], None]] = {
    "maximizer_lists": _run_maximizer_lists,
    "margin_coincidence": _run_margin_coincidence,
    "sfmi_polytopes": _run_sfmi_polytopes,
    "sfmi_system": _run_sfmi_system,
    "sfmi_atlas": _run_sfmi_atlas,
    "codes": _run_codes,
    "partitions": _run_partitions,
    "theorem_fmi": _run_theorem_fmi,
    "measures": _run_measures,
    "cli": _run_cli,
}


def run_scenario(scenario: ScenarioDocument) -> ScenarioOutcome:
    """Run one scenario; failed checks are recorded, unexpected ValueErrors end it"""
    outcome = ScenarioOutcome(scenario.name)
    runner = RUNNERS.get(scenario.kind)
    if runner is None:
        outcome.error = f"Unknown scenario kind '{scenario.kind}'"
        return outcome
    logger.info(f"Running scenario {scenario.name}")
    try:
        runner(outcome, scenario.parameters, scenario.expected)
    except (ValueError, KeyError, AssertionError) as e:
        logger.error(f"Scenario {scenario.name} raised {type(e).__name__}: {e}")
        outcome.error = f"{type(e).__name__}: {e}"
    return outcome
