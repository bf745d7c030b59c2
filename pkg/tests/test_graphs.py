import itertools

import networkx as nx
import pytest

from otkit.data import conflict_graphs
from otkit.errors import DuplicateEdge, Loop, NotStacked, ParseError
from otkit.graphs import (
    Graph,
    count_labeled_stackings,
    emit_edge_list,
    faces_all_have_degree3_vertex,
    filter_max_degree,
    generate_stacked,
    is_triangulation_candidate,
    parse_edge_list,
    parse_graph6,
    recognize_stacked,
    triangulation_certificate,
)

PLANTRI_LINE_1 = (
    "0 1 0 2 0 3 0 4 1 2 1 4 1 5 1 6 2 3 2 6 2 7 3 4 3 7 4 5 4 7 5 6 5 7 6 7"
)
PLANTRI_LINE_2 = (
    "0 1 0 2 0 3 0 4 1 2 1 4 1 5 2 3 2 5 2 6 2 7 3 4 3 7 4 5 4 6 4 7 5 6 6 7"
)

K4 = Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
K5 = Graph.from_edges(list(itertools.combinations(range(5), 2)))
C6 = Graph.from_edges([(i, (i + 1) % 6) for i in range(6)])
OCTAHEDRON = Graph.from_edges(
    [
        (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 2), (2, 3), (3, 4), (4, 1),
        (5, 1), (5, 2), (5, 3), (5, 4),
    ]
)


# ---------------------------------------------------------------------------
# edge lists


def test_parse_emit_roundtrip_plantri_line():
    g = parse_edge_list(PLANTRI_LINE_1)
    assert g.n == 8 and len(g.edges) == 18
    edges = sorted(g.edges)
    assert edges[0] == (0, 1) and edges[-1] == (6, 7)
    assert emit_edge_list(g) == PLANTRI_LINE_1


def test_parse_duplicate_edge():
    with pytest.raises(DuplicateEdge):
        parse_edge_list("0 1 1 0")


def test_parse_loop():
    with pytest.raises(Loop):
        parse_edge_list("0 0")


def test_parse_odd_tokens():
    with pytest.raises(ParseError):
        parse_edge_list("0 1 2")


def test_parse_non_integer():
    with pytest.raises(ParseError):
        parse_edge_list("0 x")


def test_bundled_roundtrip():
    for g in conflict_graphs("g+h"):
        assert parse_edge_list(emit_edge_list(g)) == g


# ---------------------------------------------------------------------------
# graph6


def test_graph6_first_plantri_graph():
    assert emit_edge_list(parse_graph6("G|tJH{")) == PLANTRI_LINE_1


def test_graph6_second_plantri_graph():
    assert emit_edge_list(parse_graph6("G|thXs")) == PLANTRI_LINE_2


def test_graph6_hand_decoded_star():
    g = parse_graph6("D?{")
    assert g.n == 5
    assert g.edges == frozenset({(0, 4), (1, 4), (2, 4), (3, 4)})


def test_graph6_bad_character_offset():
    with pytest.raises(ParseError) as exc:
        parse_graph6("G|tJH\x01")
    assert exc.value.offset is not None


# ---------------------------------------------------------------------------
# classification


def test_candidates():
    assert is_triangulation_candidate(K4)
    assert not is_triangulation_candidate(K5)
    assert not is_triangulation_candidate(C6)
    assert is_triangulation_candidate(OCTAHEDRON)


def test_recognize_k4():
    order = recognize_stacked(K4)
    assert order is not None
    assert order.steps == ((0, 1, 2),)
    assert order.graph() == K4


def test_octahedron_not_stacked():
    assert recognize_stacked(OCTAHEDRON) is None


def test_bundled_all_stacked():
    for g in conflict_graphs("g+h"):
        assert is_triangulation_candidate(g)
        order = recognize_stacked(g)
        assert order is not None
        # relabeled replay reproduces the input edge set
        relabeled = frozenset(
            tuple(sorted((order.relabeling[u], order.relabeling[v])))
            for u, v in g.edges
        )
        assert order.graph().edges == relabeled


def test_faces_predicate_k4():
    assert faces_all_have_degree3_vertex(K4)


def test_faces_predicate_requires_stacked():
    with pytest.raises(NotStacked):
        faces_all_have_degree3_vertex(OCTAHEDRON)


# ---------------------------------------------------------------------------
# generation


def test_generated_counts():
    assert [len(generate_stacked(n)) for n in range(4, 10)] == [1, 1, 1, 3, 7, 24]


def test_generated_counts_match_isomorphism_oracle():
    # exhaustive labeled stackings bucketed by networkx isomorphism
    for n in range(4, 8):
        labeled = _all_labeled_stackings(n)
        reps = []
        for g in labeled:
            G = nx.Graph(list(g.edges))
            if not any(nx.is_isomorphic(G, H) for H in reps):
                reps.append(G)
        assert len(generate_stacked(n)) == len(reps)


def _all_labeled_stackings(n):
    out = []

    def grow(edges, faces, k):
        if k == n:
            out.append(Graph.from_edges(sorted(edges), n))
            return
        for idx, (a, b, c) in enumerate(faces):
            nf = faces[:idx] + faces[idx + 1:] + [(a, b, k), (b, c, k), (a, c, k)]
            grow(edges + [(a, k), (b, k), (c, k)], nf, k + 1)

    grow([(0, 1), (0, 2), (1, 2)], [(0, 1, 2)], 3)
    return out


def test_labeled_stacking_count_formula():
    import math

    for n in range(4, 9):
        assert count_labeled_stackings(n) == 2 ** (n - 4) * math.factorial(n - 3)


def test_recognize_exactly_generated(tmp_path):
    # every generated graph is recognized; every recognized 6-vertex
    # triangulation candidate appears among the generated ones
    for n in range(4, 9):
        for g in generate_stacked(n):
            assert recognize_stacked(g) is not None
    assert recognize_stacked(OCTAHEDRON) is None  # candidate but not stacked


def test_certificate_invariant_under_relabeling():
    import random

    rng = random.Random(3)
    for g in generate_stacked(7):
        order = recognize_stacked(g)
        cert = triangulation_certificate(order.graph(), order.faces)
        for _ in range(5):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = Graph.from_edges(
                sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges), g.n
            )
            order2 = recognize_stacked(h)
            assert triangulation_certificate(order2.graph(), order2.faces) == cert


def test_filter_max_degree():
    gs = generate_stacked(7)
    at_most_5 = filter_max_degree(gs, 5)
    exactly_6 = filter_max_degree(gs, 6, exact=True)
    assert len(at_most_5) + len(exactly_6) == len(gs)
    assert all(max(g.degrees()) <= 5 for g in at_most_5)
    assert all(max(g.degrees()) == 6 for g in exactly_6)
