import sys
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from otkit.graphs import Graph, is_triangulation_candidate


def all_triangulation_candidates(n):
    """Every labeled graph on n vertices with 3n-6 edges, min degree 3,
    connected — the inputs criterion 5 sweeps."""
    all_edges = list(combinations(range(n), 2))
    m = 3 * n - 6
    out = []
    for subset in combinations(all_edges, m):
        g = Graph.from_edges(subset, n)
        if is_triangulation_candidate(g):
            out.append(g)
    return out
