"""2-SAT via strongly connected components of the implication graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

Literal = tuple[int, bool]   # (variable, polarity); (v, True) is v, (v, False) is not-v


@dataclass
class TwoSatFormula:
    n: int
    clauses: list[tuple[Literal, ...]] = field(default_factory=list)

    def add(self, *lits: Literal) -> None:
        if not 1 <= len(lits) <= 2:
            raise ValueError("clauses have one or two literals")
        for v, _ in lits:
            if not 0 <= v < self.n:
                raise ValueError(f"variable {v} out of range")
        self.clauses.append(tuple(lits))

    def satisfied_by(self, assignment: list[bool]) -> bool:
        return all(any(assignment[v] == pol for v, pol in cl) for cl in self.clauses)


def _node(lit: Literal) -> int:
    v, pol = lit
    return 2 * v + (0 if pol else 1)


def two_sat_solve(phi: TwoSatFormula) -> Optional[list[bool]]:
    """A satisfying assignment, or None if phi is unsatisfiable."""
    N = 2 * phi.n
    adj: list[list[int]] = [[] for _ in range(N)]
    for cl in phi.clauses:
        a = _node(cl[0])
        b = _node(cl[1]) if len(cl) == 2 else a
        # (a or b): not-a -> b, not-b -> a
        adj[a ^ 1].append(b)
        adj[b ^ 1].append(a)

    # Iterative Tarjan. Components come out in reverse topological order.
    index = [-1] * N
    low = [0] * N
    comp = [-1] * N
    on = [False] * N
    stack: list[int] = []
    counter = ncomp = 0
    for root in range(N):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on[v] = True
            recurse = False
            while i < len(adj[v]):
                w = adj[v][i]
                i += 1
                if index[w] == -1:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    out = []
    for x in range(phi.n):
        t, f = comp[2 * x], comp[2 * x + 1]
        if t == f:
            return None
        # The literal whose component is later in topological order (smaller id) is true.
        out.append(t < f)
    return out
