"""Command implementations shared by the argument parser and the scenarios.

Each command returns a CommandResult holding the JSON payload, the rows of
its table form and the exit code; printing is left to the caller.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ..atlas.maximizers import (
    MaximizerSet,
    count_blockMI_maximizers,
    enumerate_blockMI_maximizers,
    enumerate_I_maximizers,
)
from ..atlas.report import atlas_to_dict, polytope_report_to_dict
from ..atlas.sfmi import build_sfmi_atlas
from ..codes.codes import (
    Code,
    bipartite_matchings_partition,
    count_max_distance_codes,
    enumerate_all_partitions,
    enumerate_max_distance_codes,
    partition_into_codes,
)
from ..core.distribution import Distribution
from ..core.formatting import distribution_label, distribution_to_dict, format_float
from ..core.measures import entropy, marginal
from ..core.state_space import BlockSplit, StateSpace
from ..errors import CapExceededError
from ..family.family import MarginFamily, Pairing, is_connected_covering
from ..family.measures import i_lambda_terms
from ..polytope.margins import margin_specified_polytope
from ..registry import OperationModule, operation
from ..search.objectives import Measure, MeasureKind
from ..search.optimizer import SearchConfig, SearchResult, maximize_measure, sfmi_margin_distance
from ..settings import get_global_settings
from .io import (
    DistributionDocument,
    FamilyDocument,
    MarginsDocument,
    PairingDocument,
    SplitDocument,
    load_document,
    write_json,
)

logger = logging.getLogger(__name__)

_MODULE = OperationModule.CLI

PathLike = Union[str, Path]

MEASURE_NAMES = {kind.value: kind for kind in MeasureKind}

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3


@dataclass
class CommandResult:
    payload: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    title: str = ""
    exit_code: int = EXIT_OK


def parse_measure(name: str) -> MeasureKind:
    if name not in MEASURE_NAMES:
        raise ValueError(f"Unknown measure '{name}', expected one of {sorted(MEASURE_NAMES)}")
    return MEASURE_NAMES[name]


def _optional(path: Optional[PathLike], model):
    return load_document(path, model) if path is not None else None


# ----------------- measure -----------------

def measure_report(p: Distribution, kind: MeasureKind, family: Optional[MarginFamily] = None,
                   pairing: Optional[Pairing] = None, split: Optional[BlockSplit] = None,
                   base: str = "e") -> CommandResult:
    """Value of one measure with the marginals and per-set terms behind it"""
    measure = Measure(kind, family=family, pairing=pairing, split=split)
    value = measure.evaluate(p)
    payload: Dict[str, Any] = {
        "measure": measure.label(),
        "base": base,
        "cardinalities": list(p.space.cardinalities),
        "value": format_float(value, base),
    }
    rows: List[Dict[str, Any]] = []
    if kind is MeasureKind.I:
        payload["jointEntropy"] = format_float(entropy(p), base)
        for i in range(p.space.n):
            m = marginal(p, [i])
            rows.append({"set": [i + 1], "entropy": format_float(entropy(m), base),
                         "marginal": distribution_label(m)})
    elif kind is MeasureKind.MI:
        used = measure.block_split(p.space)
        for block in (used.x_block, used.y_block):
            m = marginal(p, block)
            rows.append({"set": [i + 1 for i in block], "entropy": format_float(entropy(m), base),
                         "marginal": distribution_label(m)})
    else:
        fam = measure.margin_family(p.space)
        for members, term in i_lambda_terms(p, fam):
            rows.append({"set": [i + 1 for i in members],
                         "multiInformation": format_float(term, base),
                         "marginal": distribution_label(marginal(p, members))})
    payload["terms"] = rows
    return CommandResult(payload, rows, title=f"{measure.label()} = {payload['value']}")


@operation("cmd_measure", _MODULE)
def cmd_measure(distribution_path: PathLike, measure: str, family_path: Optional[PathLike] = None,
                pairing_path: Optional[PathLike] = None, split_path: Optional[PathLike] = None,
                base: str = "e") -> CommandResult:
    p = load_document(distribution_path, DistributionDocument).to_distribution()
    family = _optional(family_path, FamilyDocument)
    pairing = _optional(pairing_path, PairingDocument)
    split = _optional(split_path, SplitDocument)
    return measure_report(
        p,
        parse_measure(measure),
        family=family.to_family() if family else None,
        pairing=pairing.to_pairing() if pairing else None,
        split=split.to_split() if split else None,
        base=base,
    )


# ----------------- atlas -----------------

def parse_margin_choice(codes: Sequence[Sequence[str]], N: int) -> List[Code]:
    return [Code.from_strings(list(words), N) for words in codes]


@operation("cmd_atlas", _MODULE)
def cmd_atlas(N: int, n: int, pairing: Optional[Sequence[int]] = None,
              margins: Optional[Sequence[Sequence[str]]] = None, out: Optional[PathLike] = None,
              base: str = "e") -> CommandResult:
    """SFMI polytopes for a pairing (1-based), all of them or the one for a margin choice"""
    chosen = Pairing.from_one_based(pairing) if pairing else Pairing.identity(n)
    choice = parse_margin_choice(margins, N) if margins else None
    atlas = build_sfmi_atlas(N, n, chosen, choice)
    payload = atlas_to_dict(atlas, base)
    if out is not None:
        write_json(payload, out)
        logger.info(f"Atlas written to {out}")
    rows = [
        {
            "polytope": k + 1,
            "marginChoice": poly["marginChoice"],
            "dimension": poly["affineDimension"],
            "vertices": len(poly["vertices"]),
            "codeVertices": sum(1 for v in poly["vertices"] if v["isCodeVertex"]),
            "simplices": len(poly["simplices"]),
        }
        for k, poly in enumerate(payload["polytopes"])
    ]
    return CommandResult(payload, rows, title=f"SFMI atlas N={N} n={n}: {payload['summary']}")


# ----------------- optimize -----------------

def search_result_to_dict(result: SearchResult, base: str = "e") -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "measure": result.measure,
        "cardinalities": list(result.space.cardinalities),
        "bestValue": format_float(result.best_value, base),
        "knownMaximum": None if result.known_maximum is None else format_float(result.known_maximum, base),
        "bestPoint": distribution_to_dict(result.best_point),
        "perRestartValues": [format_float(v, base) for v in result.per_restart_values],
        "convergedRestarts": result.converged_restarts,
        "restarts": [
            {
                "restart": r.restart + 1,
                "startValue": format_float(r.start_value, base),
                "finalValue": format_float(r.final_value, base),
                "iterations": r.iterations,
                "halvings": r.halvings,
                "converged": r.converged,
                "gradientNorm": format_float(r.gradient_norm),
            }
            for r in result.restarts
        ],
        "matchedMaximizer": None,
    }
    if result.matched_maximizer is not None:
        match = result.matched_maximizer
        payload["matchedMaximizer"] = {
            "index": match.index + 1,
            "distance": format_float(match.distance),
            "distribution": distribution_label(match.distribution),
        }
    return payload


def _reference_maximizers(measure: Measure, space: StateSpace) -> Optional[MaximizerSet]:
    """Exact maximizers to match against, when they are known and within the caps"""
    try:
        if measure.kind in (MeasureKind.I, MeasureKind.FMI):
            return enumerate_I_maximizers(space.N, space.n)
        if measure.kind is MeasureKind.I_LAMBDA and measure.family is not None and is_connected_covering(measure.family):
            return enumerate_I_maximizers(space.N, space.n)
        if measure.kind is MeasureKind.MI and measure.split is None and space.n % 2 == 0:
            if count_blockMI_maximizers(space.N, space.n // 2) <= get_global_settings().block_mi_cap:
                return enumerate_blockMI_maximizers(space.N, space.n // 2)
    except CapExceededError as e:
        logger.warning(f"Skipping maximizer matching: {e}")
    return None


@operation("cmd_optimize", _MODULE)
def cmd_optimize(measure: str, N: int, n: int, config: Optional[SearchConfig] = None,
                 config_path: Optional[PathLike] = None, family_path: Optional[PathLike] = None,
                 pairing: Optional[Sequence[int]] = None, split_path: Optional[PathLike] = None,
                 base: str = "e") -> CommandResult:
    if config is None:
        config = load_document(config_path, SearchConfig) if config_path is not None else SearchConfig()
    family = _optional(family_path, FamilyDocument)
    split = _optional(split_path, SplitDocument)
    target = Measure(
        parse_measure(measure),
        family=family.to_family() if family else None,
        pairing=Pairing.from_one_based(pairing) if pairing else None,
        split=split.to_split() if split else None,
    )
    space = StateSpace.homogeneous(n, N)
    result = maximize_measure(target, space, config, _reference_maximizers(target, space))
    payload = search_result_to_dict(result, base)
    if target.kind is MeasureKind.SFMI:
        distances = sfmi_margin_distance(result.best_point, target.pairing or Pairing.identity(n // 2))
        payload["sfmiMarginDistance"] = [format_float(d) for d in distances]
    rows = list(payload["restarts"])
    return CommandResult(payload, rows, title=f"{result.measure}: best {payload['bestValue']}")


# ----------------- codes -----------------

@operation("cmd_codes", _MODULE)
def cmd_codes(N: int, n: int, partitions: bool = False, matchings: bool = False) -> CommandResult:
    """Max-distance codes, the circular-shift partition and optionally all coset partitions"""
    codes = [code.to_strings() for code in enumerate_max_distance_codes(N, n)]
    payload: Dict[str, Any] = {
        "N": N,
        "n": n,
        "count": len(codes),
        "expectedCount": count_max_distance_codes(N, n),
        "codes": codes,
        "partition": partition_into_codes(N, n).to_strings(),
    }
    if partitions:
        payload["partitions"] = [p.to_strings() for p in enumerate_all_partitions(N, n)]
    if matchings:
        payload["matchings"] = [[list(edge) for edge in m] for m in bipartite_matchings_partition(N)]
    rows = [{"code": k + 1, "words": words} for k, words in enumerate(codes)]
    return CommandResult(payload, rows, title=f"{len(codes)} codes for N={N}, n={n}")


# ----------------- polytope -----------------

@operation("cmd_polytope", _MODULE)
def cmd_polytope(margins_path: PathLike) -> CommandResult:
    """Joint distributions with the margins of a margin specification document"""
    space, family, margins = load_document(margins_path, MarginsDocument).to_problem()
    report = margin_specified_polytope(space, family, margins)
    payload = {"family": family.one_based(), **polytope_report_to_dict(report)}
    rows = [
        {"vertex": k + 1, **dict(zip(payload["columns"], vertex))}
        for k, vertex in enumerate(payload["vertices"])
    ]
    title = "empty" if report.is_empty else f"dimension {report.affine_dimension}, {len(report.vertices)} vertices"
    return CommandResult(payload, rows, title=title)

