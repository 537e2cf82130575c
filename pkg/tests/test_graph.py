import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from _util import random_graph
from gelab.graph import (Digraph, Graph, GraphFormatError, bridges, complete_bipartite, complete_graph,
                         connected_components, cut_vertices, cycle_graph, find_K3_or_K23,
                         find_star_forest_modulator, format_digraph, format_graph, format_labeling,
                         is_forest, is_star_forest, is_vertex_cover, neighborhood_diversity, orient,
                         parse_digraph, parse_graph, parse_labeling, parse_vertex_set, path_graph,
                         star_graph)


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, b in zip(pairs, mask) if b])


def test_edges_are_canonical():
    G = Graph(4, [(3, 0), (1, 2), (2, 0)])
    assert G.edges == ((0, 2), (0, 3), (1, 2))
    assert G.edge_id(3, 0) == 1 and G.has_edge(2, 1)
    assert G.adj[0] == (2, 3)


@pytest.mark.parametrize("n, edges", [(2, [(0, 0)]), (2, [(0, 2)]), (3, [(0, 1), (1, 0)]), (-1, [])])
def test_graph_rejects_bad_input(n, edges):
    with pytest.raises(ValueError):
        Graph(n, edges)


def test_induced_and_delete():
    G = cycle_graph(5)
    H, vmap, emap = G.induced([0, 1, 2])
    assert H.n == 3 and H.m == 2 and vmap == [0, 1, 2]
    assert all(G.edges[emap[i]] == (vmap[a], vmap[b]) for i, (a, b) in enumerate(H.edges))
    H, vmap, _ = G.delete_vertices([0])
    assert H.n == 4 and H.m == 3 and vmap == [1, 2, 3, 4]
    H, _, emap = G.delete_edges([0])
    assert H.m == 4 and 0 not in emap


def test_graph_roundtrip_and_comments():
    G = complete_bipartite(2, 3)
    text = format_graph(G, list(range(1, G.m + 1)), comment="k23")
    assert text.startswith("c k23\np gel 5 6\n")
    H, labels = parse_graph(text)
    assert H == G and labels == list(range(1, 7))
    H, labels = parse_graph(format_graph(G))
    assert H == G and labels is None


@pytest.mark.parametrize("text", [
    "1 2\n",
    "p gel 2 1\n",
    "p gel 2 1\n1 3\n",
    "p gel 2 1\n1 1\n",
    "p gel 3 2\n1 2\n2 1\n",
    "p gel 3 2\n1 2 1\n2 3\n",
    "p gel 2 1\n1 x\n",
    "p gel 2 1\np gel 2 1\n1 2\n",
    "p upp 2 1\n1 2\n",
])
def test_parse_graph_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_parse_error_reports_line():
    with pytest.raises(GraphFormatError) as err:
        parse_graph("c hi\np gel 2 1\n1 5\n")
    assert err.value.line == 3


def test_labeling_roundtrip_and_errors():
    G = cycle_graph(4)
    lab = [1, 2, 2, 1]
    assert parse_labeling(G, format_labeling(G, lab)) == lab
    for bad in ("1 2 1\n", "1 3 1\n" + format_labeling(G, lab), "1 2 1\n1 2 2\n2 3 1\n3 4 1\n1 4 1\n"):
        with pytest.raises(GraphFormatError):
            parse_labeling(G, bad)


def test_digraph_roundtrip_and_errors():
    D = Digraph(3, [(0, 1), (2, 1)])
    assert parse_digraph(format_digraph(D)) == D
    with pytest.raises(GraphFormatError):
        parse_digraph("p upp 2 2\n1 2\n2 1\n")
    with pytest.raises(ValueError):
        Digraph(2, [(0, 1), (1, 0)])


def test_orient_bits():
    G = path_graph(3)
    assert orient(G, 0).arcs == ((0, 1), (1, 2))
    assert orient(G, 0b10).arcs == ((0, 1), (2, 1))


def test_vertex_set():
    assert parse_vertex_set("c x\n3 1\n1\n", 3) == [0, 2]
    with pytest.raises(GraphFormatError):
        parse_vertex_set("4\n", 3)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_structure_matches_networkx(G):
    H = to_nx(G)
    comps = sorted(sorted(c) for c in nx.connected_components(H))
    assert sorted(connected_components(G)) == comps
    if G.n:
        assert is_forest(G) == nx.is_forest(H)
    assert sorted(cut_vertices(G)) == sorted(nx.articulation_points(H))
    assert sorted(G.edges[e] for e in bridges(G)) == sorted(tuple(sorted(b)) for b in nx.bridges(H))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7))
def test_k3_k23_detection(G):
    found = find_K3_or_K23(G)
    H = to_nx(G)
    has_k3 = any(len(c) >= 3 for c in nx.find_cliques(H))
    has_k23 = any(len(set(G.adj[a]) & set(G.adj[b])) >= 3 for a in range(G.n) for b in range(a + 1, G.n))
    assert (found is not None) == (has_k3 or has_k23)
    if found is not None:
        kind, vs = found
        if kind == "K3":
            a, b, c = vs
            assert G.has_edge(a, b) and G.has_edge(b, c) and G.has_edge(a, c)
        else:
            a, b, *rest = vs
            assert len(rest) == 3 and all(G.has_edge(a, x) and G.has_edge(b, x) for x in rest)


def test_star_forest():
    assert is_star_forest(star_graph(5))
    assert is_star_forest(Graph(4, [(0, 1), (2, 3)]))
    assert not is_star_forest(path_graph(4))
    assert not is_star_forest(cycle_graph(3))


def test_star_forest_modulator_is_minimum():
    rng = random.Random(3)
    for _ in range(60):
        G = random_graph(rng, rng.randint(3, 8), 0.35)
        best = None
        for k in range(G.n + 1):
            X = find_star_forest_modulator(G, k)
            if X is not None:
                assert len(X) <= k and is_star_forest(G.delete_vertices(X)[0])
                best = k
                break
        # brute minimum
        from itertools import combinations
        brute = next(k for k in range(G.n + 1)
                     if any(is_star_forest(G.delete_vertices(S)[0]) for S in combinations(range(G.n), k)))
        assert best == brute


def test_neighborhood_diversity_and_cover():
    assert neighborhood_diversity(complete_graph(5)) == 1
    assert neighborhood_diversity(complete_bipartite(3, 4)) == 2
    assert neighborhood_diversity(path_graph(4)) == 4
    assert is_vertex_cover(star_graph(4), [0])
    assert not is_vertex_cover(cycle_graph(4), [0])
