import pytest

from gelab.graph import GraphFormatError
from gelab.nae import FANO, NaeFormula, brute_nae, format_dimacs, nae_satisfied, parse_dimacs_nae


def test_examples():
    phi = NaeFormula(3, ((1, 2, 3),))
    a = brute_nae(phi)
    assert a is not None and nae_satisfied(phi, a)
    assert brute_nae(NaeFormula(1, ((1, 1, 1),))) is None
    assert brute_nae(FANO) is None


def test_satisfaction():
    phi = NaeFormula(3, ((1, -2, 3),))
    assert nae_satisfied(phi, [True, True, False])
    assert not nae_satisfied(phi, [True, False, True])


def test_dimacs_roundtrip():
    assert parse_dimacs_nae(format_dimacs(FANO)) == FANO
    phi = parse_dimacs_nae("c hi\np cnf 3 2\n1 -2 3 0 -1\n2 3 0\n")
    assert phi.clauses == ((1, -2, 3), (-1, 2, 3))


@pytest.mark.parametrize("text", [
    "1 2 3 0\n", "p cnf 3 1\n1 2 0\n", "p cnf 2 1\n1 2 3 0\n", "p cnf 3 1\n1 2 3\n",
    "p cnf 3 2\n1 2 3 0\n", "p cnf 3 1\n1 2 x 0\n", "p sat 3 1\n1 2 3 0\n",
])
def test_dimacs_errors(text):
    with pytest.raises(GraphFormatError):
        parse_dimacs_nae(text)


def test_formula_validation():
    with pytest.raises(ValueError):
        NaeFormula(2, ((1, 2),))
    with pytest.raises(ValueError):
        NaeFormula(2, ((1, 2, 3),))
