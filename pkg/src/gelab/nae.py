"""NAE-3SAT formulas: DIMACS parsing and a brute-force solver."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .graph import GraphFormatError


@dataclass(frozen=True)
class NaeFormula:
    nvars: int
    clauses: tuple[tuple[int, int, int], ...]  # DIMACS literals: +i / -i, 1-indexed

    def __post_init__(self):
        for cl in self.clauses:
            if len(cl) != 3:
                raise ValueError("every clause needs exactly three literals")
            for lit in cl:
                if lit == 0 or abs(lit) > self.nvars:
                    raise ValueError(f"literal {lit} out of range")


def parse_dimacs_nae(text: str) -> NaeFormula:
    nvars = ncl = None
    clauses = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] != "cnf":
                raise GraphFormatError("malformed header, expected 'p cnf <n> <m>'", lineno)
            try:
                nvars, ncl = int(toks[2]), int(toks[3])
            except ValueError:
                raise GraphFormatError("non-integer header field", lineno) from None
            continue
        if nvars is None:
            raise GraphFormatError("clause before header", lineno)
        for t in toks:
            try:
                lit = int(t)
            except ValueError:
                raise GraphFormatError(f"not an integer: {t!r}", lineno) from None
            if lit == 0:
                if len(pending) != 3:
                    raise GraphFormatError(f"clause has {len(pending)} literals, need 3", lineno)
                clauses.append(tuple(pending))
                pending = []
            else:
                if abs(lit) > nvars:
                    raise GraphFormatError(f"variable {abs(lit)} out of range", lineno)
                pending.append(lit)
    if nvars is None:
        raise GraphFormatError("missing header line")
    if pending:
        raise GraphFormatError("last clause not terminated by 0")
    if len(clauses) != ncl:
        raise GraphFormatError(f"header announces {ncl} clauses, found {len(clauses)}")
    return NaeFormula(nvars, tuple(clauses))


def format_dimacs(phi: NaeFormula) -> str:
    lines = [f"p cnf {phi.nvars} {len(phi.clauses)}"]
    lines += [" ".join(map(str, cl)) + " 0" for cl in phi.clauses]
    return "\n".join(lines) + "\n"


def nae_satisfied(phi: NaeFormula, assignment) -> bool:
    for cl in phi.clauses:
        vals = {assignment[abs(l) - 1] == (l > 0) for l in cl}
        if len(vals) != 2:
            return False
    return True


def brute_nae(phi: NaeFormula) -> Optional[list[bool]]:
    """First NAE-satisfying assignment in lexicographic order (False < True), or None."""
    for bits in product((False, True), repeat=phi.nvars):
        if nae_satisfied(phi, bits):
            return list(bits)
    return None


FANO = NaeFormula(7, ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)))
