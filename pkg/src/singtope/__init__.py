"""Combinatorics of resolution graphs of normal surface singularities.

Fundamental cycles by Laufer's algorithm, rationality, the thick-thin
decomposition, metric conicality and the family G(n, k, l).
"""

from .arms import check_lcm_property, check_multeq, cont_frac, suffix_numerators
from .census import census, enumerate_graphs
from .classify import (
    AnalysisReport,
    Decomposition,
    NotRationalError,
    analyze,
    is_metrically_conical,
    l_nodes,
    node_count,
    thick_thin,
)
from .family import FamilyParams, InvalidFamilyParams, generate, parse_params, recognize
from .formats import format_dot, format_json, format_text, parse_graph
from .graph import (
    GraphError,
    Vertex,
    WeightedGraph,
    blow_down,
    blow_up_edge,
    canonical_form,
    intersection_matrix,
    is_negative_definite,
    is_starshaped,
)
from .laufer import LauferTrace, dot, is_in_ztop, is_rational, laufer_zmin, zmin_oracle

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "Decomposition",
    "FamilyParams",
    "GraphError",
    "InvalidFamilyParams",
    "LauferTrace",
    "NotRationalError",
    "Vertex",
    "WeightedGraph",
    "analyze",
    "blow_down",
    "blow_up_edge",
    "canonical_form",
    "census",
    "check_lcm_property",
    "check_multeq",
    "cont_frac",
    "dot",
    "enumerate_graphs",
    "format_dot",
    "format_json",
    "format_text",
    "generate",
    "intersection_matrix",
    "is_in_ztop",
    "is_metrically_conical",
    "is_negative_definite",
    "is_rational",
    "is_starshaped",
    "l_nodes",
    "laufer_zmin",
    "node_count",
    "parse_graph",
    "parse_params",
    "recognize",
    "suffix_numerators",
    "thick_thin",
    "zmin_oracle",
]
