import itertools
import random

import pytest

from _util import star_modulator_instance
from gelab.brute import brute_gel
from gelab.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph
from gelab.labeling import is_good_labeling, is_standard, is_valid_relation
from gelab.sfm import SfmContext, build_context, build_phi, enumerate_good_orders, extract_relation, solve_sfm
from gelab.twosat import TwoSatFormula, two_sat_solve


def test_two_sat_examples():
    phi = TwoSatFormula(1)
    phi.add((0, True))
    phi.add((0, False))
    assert two_sat_solve(phi) is None
    phi = TwoSatFormula(2)
    phi.add((0, True), (1, True))
    a = two_sat_solve(phi)
    assert a is not None and phi.satisfied_by(a)
    x, y, z = 0, 1, 2
    phi = TwoSatFormula(3)
    phi.add((x, False), (y, True))
    phi.add((y, False), (z, True))
    phi.add((x, True))
    phi.add((z, False))
    assert two_sat_solve(phi) is None


def test_two_sat_rejects_bad_clauses():
    phi = TwoSatFormula(2)
    with pytest.raises(ValueError):
        phi.add((0, True), (1, True), (0, False))
    with pytest.raises(ValueError):
        phi.add((2, True))


def test_two_sat_matches_exhaustive():
    rng = random.Random(0)
    for _ in range(500):
        n = rng.randint(1, 6)
        phi = TwoSatFormula(n)
        for _ in range(rng.randint(1, 3 * n)):
            phi.add(*[(rng.randrange(n), rng.random() < 0.5) for _ in range(rng.randint(1, 2))])
        a = two_sat_solve(phi)
        sat = any(phi.satisfied_by(list(bits)) for bits in itertools.product((False, True), repeat=n))
        assert (a is not None) == sat
        if a is not None:
            assert phi.satisfied_by(a)


def test_spec_graphs():
    G = cycle_graph(4)
    lab = solve_sfm(G, [0])
    assert lab is not None and is_good_labeling(G, lab).good
    assert solve_sfm(complete_bipartite(2, 3), [0, 1]) is None


def test_not_a_modulator():
    with pytest.raises(ValueError):
        solve_sfm(path_graph(5), [0])
    with pytest.raises(ValueError):
        solve_sfm(path_graph(3), [7])


def test_context_partition():
    # C4 core on X = {0..3}; star center 4 joined to 0, type-2 leaves 5, 6 both joined to 2
    G = Graph(7, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (4, 5), (4, 6), (5, 2), (6, 2)])
    ctx = build_context(G, [0, 1, 2, 3])
    assert ctx is not None
    assert len(ctx.F) == 1 and len(ctx.L) == 4 and len(ctx.core) == 4
    assert sorted(ctx.core + ctx.L + ctx.F) == list(range(ctx.G.m))
    lab = solve_sfm(G, [0, 1, 2, 3])
    assert lab is not None and is_good_labeling(G, lab).good


def manual_context(G, core):
    return SfmContext(G, list(range(G.n)), [], core, [], [], list(range(G.m)), [], None)


def test_order_enumeration():
    assert list(enumerate_good_orders(manual_context(Graph(2), []))) == [()]
    assert list(enumerate_good_orders(manual_context(path_graph(2), [0]))) == [(0,)]
    K3 = complete_graph(3)
    assert list(enumerate_good_orders(manual_context(K3, [0, 1, 2]))) == []
    C4 = cycle_graph(4)
    orders = list(enumerate_good_orders(manual_context(C4, [0, 1, 2, 3])))
    assert orders and all(is_good_labeling(C4, [o.index(e) + 1 for e in range(4)]).good for o in orders)


def test_extracted_relation_is_standard():
    rng = random.Random(11)
    checked = 0
    while checked < 30:
        G, X = star_modulator_instance(rng)
        ctx = build_context(G, X)
        if ctx is None or not ctx.F:
            continue
        for rho in enumerate_good_orders(ctx):
            phi = build_phi(ctx, rho)
            a = two_sat_solve(phi)
            if a is None:
                continue
            assert len(phi.clauses) >= len(rho) * (len(rho) - 1) // 2
            rel, small, big = extract_relation(ctx, rho, a)
            assert is_valid_relation(rel) and is_standard(rel, small, big)
            assert len(small) + len(big) == len(ctx.L)
            checked += 1
            break
        else:
            checked += 1


def test_random_instances_match_brute():
    rng = random.Random(12)
    for _ in range(60):
        G, X = star_modulator_instance(rng)
        stats = {}
        lab = solve_sfm(G, X, stats=stats)
        assert (lab is None) == (brute_gel(G) is None)
        if lab is not None:
            assert is_good_labeling(G, lab).good
