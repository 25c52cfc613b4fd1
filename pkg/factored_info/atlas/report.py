"""JSON-ready dictionaries for polytopes, atlases and maximizer sets"""

from typing import Any, Dict

from ..core.formatting import distribution_label, distribution_to_dict, format_float, format_vector
from ..core.measures import entropy, multi_information
from ..core.state_space import format_state
from ..family.measures import sfmi
from ..polytope.vertices import PolytopeReport
from .maximizers import MaximizerSet
from .sfmi import PairingOverlapReport, SfmiAtlas, SfmiPolytope


def polytope_report_to_dict(report: PolytopeReport) -> Dict[str, Any]:
    return {
        "columns": [format_state(s) for s in report.column_labels],
        "rank": report.rank,
        "affineDimension": report.affine_dimension,
        "vertexSpanDimension": report.vertex_span_dimension,
        "kernelBasis": [format_vector(v) for v in report.kernel_basis],
        "vertices": [format_vector(v) for v in report.vertices],
        "isEmpty": report.is_empty,
        "isPoint": report.is_point,
    }


def sfmi_polytope_to_dict(poly: SfmiPolytope, base: str = "e") -> Dict[str, Any]:
    vertices = []
    for k in range(len(poly.report.vertices)):
        v = poly.vertex_distribution(k)
        vertices.append({
            "distribution": distribution_label(v),
            "isCodeVertex": k in poly.code_vertices,
            "sfmi": format_float(sfmi(v.to_float(), poly.pairing), base),
            "multiInformation": format_float(multi_information(v.to_float()), base),
        })
    return {
        "marginChoice": [code.to_strings() for code in poly.margin_choice],
        "pairing": poly.pairing.one_based(),
        "support": [format_state(s) for s in poly.support],
        "rank": poly.report.rank,
        "affineDimension": poly.report.affine_dimension,
        "vertices": vertices,
        "simplices": [list(s) for s in poly.simplices],
        "centroid": distribution_label(poly.centroid),
        "centroidEntropy": format_float(entropy(poly.centroid), base),
    }


def atlas_to_dict(atlas: SfmiAtlas, base: str = "e") -> Dict[str, Any]:
    return {
        "N": atlas.N,
        "n": atlas.n,
        "pairing": atlas.pairing.one_based(),
        "summary": atlas.summary(),
        "polytopes": [sfmi_polytope_to_dict(poly, base) for poly in atlas.polytopes],
    }


def maximizer_set_to_dict(maximizers: MaximizerSet, base: str = "e") -> Dict[str, Any]:
    return {
        "kind": maximizers.kind.value,
        "N": maximizers.N,
        "n": maximizers.n,
        "maximumValue": format_float(maximizers.maximum_value, base),
        "count": len(maximizers),
        "distributions": [distribution_to_dict(p) for p in maximizers],
    }


def pairing_overlaps_to_dict(report: PairingOverlapReport) -> Dict[str, Any]:
    return {
        "pairings": [p.one_based() for p in report.pairings],
        "centroids": [[distribution_label(c) for c in group] for group in report.centroids],
        "overlaps": [
            {"pairings": [a + 1, b + 1], "sharedCentroids": count}
            for (a, b), count in sorted(report.overlaps.items())
        ],
    }
