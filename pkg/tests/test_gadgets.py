import itertools

import pytest

from gelab.brute import brute_c_gel
from gelab.dp import dp_c_gel
from gelab.gadgets import (gen_color, gen_extremal, gen_forced, gen_hypercube_with_gel, gen_knplus,
                           gen_propagation, gen_upp_block, reduce_2gel_to_cgel, reduce_nae_to_2gel,
                           reduce_nae_to_upp)
from gelab.graph import Graph, connected_components, cycle_graph, neighborhood_diversity
from gelab.labeling import is_good_labeling
from gelab.nae import NaeFormula, brute_nae
from gelab.td import build_td, make_nice


def is_connected(G):
    return len(connected_components(G)) == 1


def test_sizes():
    assert gen_propagation()[0].m == 10
    assert gen_extremal()[0].m == 9
    G, m = gen_color(3)
    assert (G.n, G.m) == (7, 9) and len(m["spokes"]) == 3
    assert gen_forced(3)[0].m == 12
    C = gen_knplus(2)
    assert (C.n, C.m) == (4, 4) and all(len(a) == 2 for a in C.adj) and is_connected(C)
    K3p = gen_knplus(3)
    assert (K3p.n, K3p.m) == (9, 12) and neighborhood_diversity(K3p) == 6
    G, m = gen_upp_block()
    assert (G.n, G.m) == (12, 16) and len(m["free"]) == 4 and len(m["triangles"]) == 4


def test_forced_degree_bound():
    for c in (3, 4, 5):
        G, _ = gen_forced(c)
        assert G.max_degree() <= 3 * c - 5


def test_hypercube():
    G, lab = gen_hypercube_with_gel(1)
    assert G.m == 1 and lab == (1,)
    G, lab = gen_hypercube_with_gel(2)
    assert G.n == 4 and G.m == 4 and is_good_labeling(G, lab).good
    G, lab = gen_hypercube_with_gel(3)
    assert G.m == 12 and is_good_labeling(G, lab).good and lab.c == 3


def test_nae_to_2gel_sizes_and_map():
    phi = NaeFormula(3, ((1, 2, 3),))
    G, m = reduce_nae_to_2gel(phi)
    assert (G.n, G.m) == (29, 41)
    assert len(m["e"]) == len(m["ebar"]) == 3 and len(m["f"]) == 1 and len(m["f"][0]) == 3
    assert len(m["propagation"]) == 3
    for link in m["propagation"]:
        assert len(link["bones"]) == 2


def test_nae_to_2gel_labels_match_assignment():
    phi = NaeFormula(3, ((1, -2, 3), (-1, 2, 3)))
    G, m = reduce_nae_to_2gel(phi)
    lab = dp_c_gel(G, make_nice(build_td(G)), 2)
    assert lab is not None and brute_nae(phi) is not None
    # every propagation gadget forces equal bones
    for link in m["propagation"]:
        a, b = link["bones"]
        assert lab[a] == lab[b]


def test_nae_to_2gel_unsat():
    # NAE(1,-2,x) and NAE(1,-2,-x) force x1 = x2; with (1,2,x) and (1,2,-x) nothing is left
    phi = NaeFormula(3, ((1, -2, 3), (1, -2, -3), (1, 2, 3), (1, 2, -3)))
    assert brute_nae(phi) is None
    G, _ = reduce_nae_to_2gel(phi)
    assert dp_c_gel(G, make_nice(build_td(G)), 2) is None


def test_nae_to_2gel_admits_3gel():
    G, _ = reduce_nae_to_2gel(NaeFormula(3, ((1, 2, 3),)))
    lab = dp_c_gel(G, make_nice(build_td(G)), 3)
    assert lab is not None and is_good_labeling(G, lab).good


def test_reductions_reject_repeated_variables():
    for phi in (NaeFormula(2, ((1, 1, 2),)), NaeFormula(2, ((1, -1, 2),))):
        with pytest.raises(ValueError):
            reduce_nae_to_2gel(phi)
        with pytest.raises(ValueError):
            reduce_nae_to_upp(phi)


def test_2gel_to_cgel():
    H, m = reduce_2gel_to_cgel(Graph(2, [(0, 1)]), 3)
    F3, _ = gen_forced(3)
    assert (H.n, H.m) == (F3.n, F3.m) and len(m["bones"]) == 1
    with pytest.raises(ValueError):
        reduce_2gel_to_cgel(cycle_graph(4), 2)
    G, _ = reduce_nae_to_2gel(NaeFormula(3, ((1, 2, 3),)))
    H, _ = reduce_2gel_to_cgel(G, 3)
    assert H.max_degree() <= 10 * (3 * 3 - 5)


def test_2gel_to_cgel_preserves_answers():
    # C4 is 2-good; K3 is not good at all
    for G, want in ((cycle_graph(4), True), (Graph(3, [(0, 1), (1, 2), (0, 2)]), False)):
        H, _ = reduce_2gel_to_cgel(G, 3)
        lab = dp_c_gel(H, make_nice(build_td(H)), 3)
        assert (lab is not None) == want


def test_nae_to_upp_structure():
    phi = NaeFormula(3, ((1, 2, 3),))
    G, m = reduce_nae_to_upp(phi)
    assert G.max_degree() <= 5
    assert all(len(v["blocks"]) == 4 for v in m["variables"])
    assert len(m["clauses"]) == 1 and len(m["clauses"][0]["link_apices"]) == 8
    G2, m2 = reduce_nae_to_upp(NaeFormula(3, ((1, 2, 3), (-1, 2, -3))))
    assert all(len(v["blocks"]) == 8 for v in m2["variables"])
    assert G2.max_degree() <= 5
