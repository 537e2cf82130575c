import random

import pytest
from hypothesis import given, settings, strategies as st

from _util import random_graph
from gelab.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph
from gelab.labeling import (EQUAL, GREATER, SMALLER, EdgeLabeling, NotGoodError, RelationError,
                            check_witness, cycle_extrema, cycle_minima_oracle, is_good_fast,
                            is_good_labeling, is_standard, is_valid_relation, labeling_from_rel,
                            monotone_path, normalize, rel_from_labeling)


def test_edge_labeling_basics():
    lab = EdgeLabeling([3, 1, 3])
    assert lab.c == 2 and lab == (3, 1, 3)
    with pytest.raises(ValueError):
        EdgeLabeling([-1])
    assert normalize([10, 5, 10, 7]) == (3, 1, 3, 2)


def test_forest_is_good_with_one_label():
    G = path_graph(6)
    assert is_good_labeling(G, [1] * G.m).good


def test_monochromatic_cycle_witness():
    G = cycle_graph(5)
    v = is_good_labeling(G, [2] * 5)
    assert not v.good and v.cycle is not None and check_witness(G, [2] * 5, v)


def test_two_path_witness():
    G = cycle_graph(4)
    lab = [0] * 4
    for (a, b), x in zip([(0, 1), (1, 2), (2, 3), (0, 3)], [1, 1, 2, 2]):
        lab[G.edge_id(a, b)] = x
    v = is_good_labeling(G, lab)
    assert not v.good and v.pair is not None
    assert check_witness(G, lab, v)
    assert v.status == "bad"


def test_k3_and_k23_bad_for_every_labeling():
    import itertools
    for G in (complete_graph(3), complete_bipartite(2, 3)):
        assert not any(is_good_fast(G, lab) for lab in itertools.product(range(1, G.m + 1), repeat=G.m))


def test_check_witness_rejects_forgeries():
    G = cycle_graph(4)
    lab = [1, 2, 2, 1]
    assert is_good_labeling(G, lab).good
    from gelab.labeling import GoodnessVerdict
    fake = GoodnessVerdict(False, pair=(0, 2), paths=((0, 1, 2), (0, 3, 2)))
    assert not check_witness(G, lab, fake)
    assert not check_witness(G, lab, GoodnessVerdict(False, cycle=(0, 1, 2, 3)))


def test_length_mismatch_raises():
    with pytest.raises(ValueError):
        is_good_labeling(cycle_graph(4), [1, 2])


@pytest.mark.parametrize("seq, expected", [
    ([1, 1, 1], (0, 0)),
    ([1, 2, 3], (1, 1)),
    ([1, 2, 1, 2], (2, 2)),
    ([1, 1, 2, 2], (1, 1)),
    ([2, 1, 1, 3, 3], (1, 1)),
])
def test_cycle_extrema(seq, expected):
    assert cycle_extrema(seq) == expected


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_verifier_agrees_with_oracle_and_fast(data):
    n = data.draw(st.integers(2, 7))
    rng = random.Random(data.draw(st.integers(0, 10**9)))
    G = random_graph(rng, n, rng.uniform(0.2, 0.7))
    c = data.draw(st.integers(1, 4))
    lab = [rng.randint(1, c) for _ in range(G.m)]
    v = is_good_labeling(G, lab)
    assert v.good == cycle_minima_oracle(G, lab).good == is_good_fast(G, lab)
    if not v.good:
        assert check_witness(G, lab, v)
    o = cycle_minima_oracle(G, lab)
    if not o.good:
        assert check_witness(G, lab, o)


def test_goodness_ignores_label_values():
    rng = random.Random(5)
    for _ in range(100):
        G = random_graph(rng, 7, 0.4)
        lab = [rng.randint(1, 3) for _ in range(G.m)]
        shifted = [10 * x + 7 for x in lab]
        assert is_good_labeling(G, lab).good == is_good_labeling(G, shifted).good


def test_monotone_path():
    G = path_graph(4)
    lab = [1, 2, 3]
    assert monotone_path(G, lab, 0, 3) == [0, 1, 2, 3]
    assert monotone_path(G, lab, 3, 0) is None
    assert monotone_path(G, lab, 3, 0, increasing=False) == [3, 2, 1, 0]
    assert monotone_path(G, lab, 0, 3, restrict=[0, 1, 2]) is None
    with pytest.raises(NotGoodError):
        monotone_path(cycle_graph(3), [1, 1, 1], 0, 1)


def test_relations_roundtrip():
    lab = [3, 1, 3, 2]
    rel = rel_from_labeling(lab)
    assert is_valid_relation(rel)
    assert rel[0][1] == GREATER and rel[1][0] == SMALLER and rel[0][2] == EQUAL
    assert labeling_from_rel(rel) == (2, 0, 2, 1)


def test_invalid_relations():
    cyc = ((EQUAL, GREATER, SMALLER), (SMALLER, EQUAL, GREATER), (GREATER, SMALLER, EQUAL))
    assert not is_valid_relation(cyc)
    with pytest.raises(RelationError):
        labeling_from_rel(cyc)
    asym = ((EQUAL, GREATER), (GREATER, EQUAL))
    assert not is_valid_relation(asym)


def test_is_standard():
    # edges 0 (small), 1, 2 strict, 3 (big)
    rel = rel_from_labeling([0, 1, 2, 9])
    assert is_standard(rel, [0], [3])
    assert not is_standard(rel_from_labeling([0, 1, 1, 9]), [0], [3])
    assert not is_standard(rel, [1], [3])
