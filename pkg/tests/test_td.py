import random

import networkx as nx
import pytest
from networkx.algorithms.approximation import treewidth_min_degree

from _util import random_graph
from gelab.graph import Graph, GraphFormatError, complete_graph, cycle_graph, path_graph
from gelab.pathtypes import (EMPTY, GOOD, MAX, MAXMIN, MIN, MINMAX, LabelType, closed_walk_is_bad,
                             concat_label_types, type_of_labeled_path)
from gelab.td import (TreeDecomposition, build_td, format_td, make_nice, parse_td, treewidth_exact,
                      validate_nice, validate_td)


def td(bags, tree):
    return TreeDecomposition(tuple(frozenset(b) for b in bags), tuple(tree))


def test_validate_examples():
    P = path_graph(3)
    assert validate_td(P, td([{0, 1}, {1, 2}], [(0, 1)])) is None
    G = Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert validate_td(G, td([{0, 1}, {1, 2}], [(0, 1)])).prop == "edge coverage"
    bad = td([{0, 1}, {1, 2}, {2, 0}], [(0, 1), (1, 2)])
    assert validate_td(P, bad).prop == "connectivity"
    assert validate_td(P, td([{0, 1}], [])).prop == "vertex coverage"


def test_pace_roundtrip():
    G = cycle_graph(5)
    d = build_td(G)
    text = format_td(d, G.n)
    assert text.startswith("s td")
    again = parse_td(text)
    assert again.width == d.width and validate_td(G, again) is None


def test_pace_errors():
    for text in ("b 1 1\n", "s td 1 2 2\nb 2 1 2\n", "s td x 2 2\n"):
        with pytest.raises(GraphFormatError):
            parse_td(text)


def test_nice_single_bag():
    nice = make_nice(td([{0, 1}], []))
    kinds = [nd.kind for nd in nice.nodes]
    assert kinds[0] == "leaf" and kinds.count("introduce") == 2 and kinds.count("forget") == 2
    assert nice.nodes[nice.root].bag == frozenset()
    assert validate_nice(Graph(2, [(0, 1)]), nice) is None


def test_exact_widths():
    assert treewidth_exact(path_graph(5)) == 1
    assert treewidth_exact(cycle_graph(4)) == 2
    assert treewidth_exact(complete_graph(4)) == 3
    assert build_td(path_graph(4), "heuristic").width == 1
    with pytest.raises(ValueError):
        build_td(complete_graph(16), "exact_small")


def test_decompositions_valid_and_bounded():
    rng = random.Random(4)
    for _ in range(60):
        G = random_graph(rng, rng.randint(1, 10), rng.uniform(0.1, 0.6))
        H = nx.Graph()
        H.add_nodes_from(range(G.n))
        H.add_edges_from(G.edges)
        heur = build_td(G)
        exact = build_td(G, "exact_small")
        for d in (heur, exact):
            assert validate_td(G, d) is None
            nice = make_nice(d)
            assert validate_nice(G, nice) is None and nice.width == d.width
        # any decomposition bounds the true width from above
        assert exact.width <= heur.width
        assert exact.width <= treewidth_min_degree(H)[0]


@pytest.mark.parametrize("seq, tag", [
    ((1, 2, 3), EMPTY), ((2, 1, 2), MIN), ((1, 2, 1, 2), MAXMIN), ((2, 1, 2, 1, 2), GOOD),
    ((2, 1, 2, 3, 2), MINMAX), ((3, 2, 2, 1), EMPTY), ((1, 3, 3, 1), MAX),
])
def test_path_types(seq, tag):
    assert type_of_labeled_path(seq) == tag


def test_concatenation():
    T = LabelType
    assert concat_label_types(T(1, EMPTY, 2), T(2, EMPTY, 3)) == T(1, EMPTY, 3)
    assert concat_label_types(T(1, MIN, 2), T(2, MAX, 1)) == T(1, MINMAX, 1)
    assert concat_label_types(T(1, MIN, 3), T(2, MAX, 1)) == T(1, GOOD, 1)


def test_concatenation_matches_sequences():
    rng = random.Random(6)
    for _ in range(2000):
        a = [rng.randint(1, 4) for _ in range(rng.randint(1, 5))]
        b = [rng.randint(1, 4) for _ in range(rng.randint(1, 5))]
        ta = LabelType(a[0], type_of_labeled_path(a), a[-1])
        tb = LabelType(b[0], type_of_labeled_path(b), b[-1])
        assert concat_label_types(ta, tb) == LabelType(a[0], type_of_labeled_path(a + b), b[-1])


def test_closed_walks():
    from gelab.labeling import cycle_extrema
    rng = random.Random(8)
    for _ in range(2000):
        seq = [rng.randint(1, 4) for _ in range(rng.randint(3, 7))]
        t = LabelType(seq[0], type_of_labeled_path(seq), seq[-1])
        mins, maxs = cycle_extrema(seq)
        assert closed_walk_is_bad(t) == (mins < 2 and maxs < 2), seq
