"""Grid-free linear 3-uniform hypergraphs over prime fields."""

from .constructions import SetSpec, build_ap, build_multiplicative, build_qr, build_quadratic
from .detect import GRID, TRIANGLE, find_embeddings, grid_free, triangle_count
from .hypergraph import Pattern, TripartiteHypergraph, conflicting_pairs, is_linear, linearize

__all__ = [
    "GRID", "TRIANGLE", "Pattern", "SetSpec", "TripartiteHypergraph", "build_ap",
    "build_multiplicative", "build_qr", "build_quadratic", "conflicting_pairs",
    "find_embeddings", "grid_free", "is_linear", "linearize", "triangle_count",
]
