"""Graph metrics, expansion, cycle certificates and graph codecs."""

from .cycles import (
    Cycle,
    ShortCertificate,
    Verdict,
    check_short,
    cycle_matrix,
    cycle_space_dim,
    cycle_vector,
    edge_multiplicity,
    fundamental_cycle_basis,
)
from .gadgets import (
    four_to_three,
    gadget_cycle_image,
    pendant_color_decode,
    pendant_color_encode,
    three_to_four_decode,
)
from .graph import Graph, complete_graph, cycle_graph, path_graph, random_regular_graph
from .qi import QIRelation, QIReport, qi_check
from .spectral import SpectralReport, cheeger_exact, lambda2, normalized_laplacian, spectral_report

__all__ = [
    "Cycle", "ShortCertificate", "Verdict", "check_short", "cycle_matrix",
    "cycle_space_dim", "cycle_vector", "edge_multiplicity", "fundamental_cycle_basis",
    "four_to_three", "gadget_cycle_image", "pendant_color_decode", "pendant_color_encode",
    "three_to_four_decode", "Graph", "complete_graph", "cycle_graph", "path_graph",
    "random_regular_graph", "QIRelation", "QIReport", "qi_check", "SpectralReport",
    "cheeger_exact", "lambda2", "normalized_laplacian", "spectral_report",
]
