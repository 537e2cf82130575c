"""Unique path property: every ordered pair has at most one directed path."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .brute import SearchBudget, _Counter
from .graph import Digraph, Graph


@dataclass(frozen=True)
class UppVerdict:
    upp: bool
    pair: Optional[tuple[int, int]] = None
    paths: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    @property
    def status(self) -> str:
        return "upp" if self.upp else "violation"


def _reach(D: Digraph) -> list[int]:
    """Bitmask of vertices reachable from each vertex (itself included)."""
    reach = [0] * D.n
    for s in range(D.n):
        seen = 1 << s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in D.out[x]:
                if not seen >> y & 1:
                    seen |= 1 << y
                    stack.append(y)
        reach[s] = seen
    return reach


def two_disjoint_paths(D: Digraph, s: int, t: int) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Two internally vertex-disjoint s->t dipaths, or None.

    Unit vertex capacities via splitting v into (2v -> 2v+1); stops after
    two augmentations.
    """
    flow: dict[tuple[int, int], int] = {}

    def cap(a: int, b: int) -> int:
        # Residual capacity in the split network.
        if a // 2 == b // 2:
            v = a // 2
            base = 2 if v in (s, t) else 1
            return (base if a % 2 == 0 else 0) - flow.get((a, b), 0) + flow.get((b, a), 0)
        if a % 2 == 1 and b % 2 == 0:
            return 1 - flow.get((a, b), 0)
        return flow.get((b, a), 0)

    def nbrs(a: int):
        v = a // 2
        if a % 2 == 0:
            yield a + 1
            for u in D.inn[v]:
                yield 2 * u + 1
        else:
            yield a - 1
            for w in D.out[v]:
                yield 2 * w

    src, dst = 2 * s + 1, 2 * t
    for _ in range(2):
        prev = {src: None}
        queue = deque([src])
        while queue and dst not in prev:
            a = queue.popleft()
            for b in nbrs(a):
                if b not in prev and cap(a, b) > 0:
                    prev[b] = a
                    queue.append(b)
        if dst not in prev:
            return None
        b = dst
        while prev[b] is not None:
            a = prev[b]
            if flow.get((b, a), 0) > 0:
                flow[(b, a)] -= 1
            else:
                flow[(a, b)] = flow.get((a, b), 0) + 1
            b = a
    succ: dict[int, list[int]] = {}
    for (a, b), f in flow.items():
        if f > 0 and a % 2 == 1 and b % 2 == 0:
            succ.setdefault(a // 2, []).append(b // 2)
    paths = []
    for first in sorted(succ[s]):
        path = [s, first]
        while path[-1] != t:
            path.append(succ[path[-1]][0])
        paths.append(tuple(path))
    return paths[0], paths[1]


def is_upp(D: Digraph) -> UppVerdict:
    reach = _reach(D)
    for s in range(D.n):
        outs = D.out[s]
        if len(outs) < 2:
            continue
        for t in range(D.n):
            if t == s:
                continue
            # Disjoint paths leave s through different out-neighbours.
            if sum(1 for x in outs if reach[x] >> t & 1) < 2:
                continue
            found = two_disjoint_paths(D, s, t)
            if found is not None:
                return UppVerdict(False, (s, t), found)
    return UppVerdict(True)


def check_upp_witness(D: Digraph, verdict: UppVerdict) -> bool:
    if verdict.upp:
        return True
    s, t = verdict.pair
    p, q = verdict.paths
    arcs = set(D.arcs)
    for path in (p, q):
        if path[0] != s or path[-1] != t or len(set(path)) != len(path):
            return False
        if any((a, b) not in arcs for a, b in zip(path, path[1:])):
            return False
    return p != q and not set(p[1:-1]) & set(q[1:-1])


def topological_order(D: Digraph) -> Optional[list[int]]:
    indeg = [len(D.inn[v]) for v in range(D.n)]
    queue = deque(v for v in range(D.n) if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in D.out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order if len(order) == D.n else None


def count_paths_dag(D: Digraph, u: int, v: int) -> int:
    """Number of directed u->v paths; D must be acyclic."""
    order = topological_order(D)
    if order is None:
        raise ValueError("digraph has a directed cycle")
    ways = [0] * D.n
    ways[u] = 1
    for x in order:
        if ways[x]:
            for y in D.out[x]:
                ways[y] += ways[x]
    return ways[v]


def count_paths_brute(D: Digraph, u: int, v: int, cap: int = 10**6) -> int:
    """Number of simple directed u->v paths by exhaustive search."""
    count = 0
    stack = [(u, 1 << u)]
    while stack:
        x, seen = stack.pop()
        for y in D.out[x]:
            if y == v:
                count += 1
                if count > cap:
                    raise RuntimeError("path cap exceeded")
            elif not seen >> y & 1:
                stack.append((y, seen | 1 << y))
    return count if u != v else 0


class _Partial:
    """Arcs chosen so far, shaped like a Digraph for the flow search."""

    def __init__(self, n: int):
        self.n = n
        self.out: list[set] = [set() for _ in range(n)]
        self.inn: list[set] = [set() for _ in range(n)]

    def add(self, a: int, b: int):
        self.out[a].add(b)
        self.inn[b].add(a)

    def remove(self, a: int, b: int):
        self.out[a].discard(b)
        self.inn[b].discard(a)

    def violates_through(self, arcs) -> bool:
        # A new violation uses some new arc a->b, so it runs from an ancestor
        # of a to a descendant of b.
        for a, b in arcs:
            sources = [s for s in _collect(self.inn, a) if len(self.out[s]) >= 2]
            if not sources:
                continue
            sinks = [t for t in _collect(self.out, b) if len(self.inn[t]) >= 2]
            for s in sources:
                for t in sinks:
                    if s != t and two_disjoint_paths(self, s, t) is not None:
                        return True
        return False


def _triangles(G: Graph) -> Optional[list[tuple[int, int, int]]]:
    """All triangles (x, y, z), or None if two of them share an edge.

    Each triangle must be a directed cycle, and two cyclic triangles on the
    edge xy give two disjoint dipaths in the direction opposite to xy.
    """
    nbr = [set(a) for a in G.adj]
    out = []
    owner: dict[int, int] = {}
    for x in range(G.n):
        for y in sorted(nbr[x]):
            if y <= x:
                continue
            for z in sorted(nbr[x] & nbr[y]):
                if z <= y:
                    continue
                for e in (G.edge_id(x, y), G.edge_id(y, z), G.edge_id(x, z)):
                    if e in owner:
                        return None
                    owner[e] = len(out)
                out.append((x, y, z))
    return out


def find_upp_orientation(G: Graph, budget: Optional[SearchBudget] = None,
                         stats: Optional[dict] = None) -> Optional[Digraph]:
    """Some UPP orientation of G, or None if there is none.

    Exhaustive search with pruning, meant for the small reduction instances.

    Every triangle must be a directed cycle. If its third vertex has degree 2,
    either cycle gives dipaths both ways between the other two and nothing
    else passes through it, so the triangle is fixed up front as a two-way
    pair and its direction chosen at the end. Other triangles are decided as
    one unit, the remaining edges one by one. A partial orientation that
    already violates UPP is abandoned, since adding arcs cannot repair it.
    After every choice each unit touching the new arcs is tested both ways;
    if both fail the branch dies, and if one fails the other is forced.
    """
    counter = _Counter(budget or SearchBudget())
    tally = {"decisions": 0, "backtracks": 0}
    tris = _triangles(G)
    if tris is None:
        return None
    P = _Partial(G.n)
    fixed: list[tuple[int, int, int]] = []  # (x, y, apex) cycled x->y->apex->x at the end
    units: list[list[tuple[int, int]]] = []  # each unit: its arcs for choice 0; choice 1 reverses them
    covered = set()
    for x, y, z in tris:
        covered |= {G.edge_id(x, y), G.edge_id(y, z), G.edge_id(x, z)}
        for a, b, t in ((x, y, z), (x, z, y), (y, z, x)):
            if G.degree(t) == 2:
                P.add(a, b)
                P.add(b, a)
                fixed.append((a, b, t))
                break
        else:
            units.append([(x, y), (y, z), (z, x)])
    for e in range(G.m):
        if e not in covered:
            units.append([G.edges[e]])
    if not is_upp(P).upp:
        return None

    unit_vertices = [sorted({x for arc in arcs for x in arc}) for arcs in units]
    at_vertex: list[list[int]] = [[] for _ in range(G.n)]
    for r, vs in enumerate(unit_vertices):
        for v in vs:
            at_vertex[v].append(r)
    value: dict[int, int] = {}

    def arcs_of(r: int, flag: int) -> list[tuple[int, int]]:
        return [(a, b) if flag == 0 else (b, a) for a, b in units[r]]

    def place(r: int, flag: int) -> bool:
        counter.tick()
        arcs = arcs_of(r, flag)
        for a, b in arcs:
            P.add(a, b)
        value[r] = flag
        if P.violates_through(arcs):
            unplace(r)
            return False
        return True

    def unplace(r: int):
        for a, b in arcs_of(r, value.pop(r)):
            P.remove(a, b)

    def propagate(start: int, forced: list[int]) -> bool:
        queue = deque([start])
        while queue:
            r = queue.popleft()
            for q in sorted({q for x in unit_vertices[r] for q in at_vertex[x]}):
                if q in value:
                    continue
                ok = []
                for flag in (0, 1):
                    if place(q, flag):
                        unplace(q)
                        ok.append(flag)
                if not ok:
                    return False
                if len(ok) == 1:
                    place(q, ok[0])
                    forced.append(q)
                    queue.append(q)
        return True

    def pick() -> Optional[int]:
        # Prefer the unit with most vertices already touched: it closes
        # cycles soonest, which is where violations show up.
        best, key = None, None
        for r in range(len(units)):
            if r in value:
                continue
            k = -sum(1 for x in unit_vertices[r] if P.out[x] or P.inn[x])
            if key is None or k < key:
                best, key = r, k
        return best

    def rec() -> bool:
        r = pick()
        if r is None:
            return True
        tally["decisions"] += 1
        for flag in (0, 1):
            if not place(r, flag):
                continue
            forced: list[int] = []
            if propagate(r, forced) and rec():
                return True
            tally["backtracks"] += 1
            for q in reversed(forced):
                unplace(q)
            unplace(r)
        return False

    try:
        found = rec()
    finally:
        if stats is not None:
            stats.update(tally, nodes=counter.nodes, units=len(units))
    if not found:
        return None
    arcs = [arc for r in range(len(units)) for arc in arcs_of(r, value[r])]
    arcs += [arc for a, b, t in fixed for arc in ((a, b), (b, t), (t, a))]
    D = Digraph(G.n, arcs)
    assert is_upp(D).upp
    return D


def _collect(adj: list[set], x: int) -> set[int]:
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for z in adj[y]:
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return seen
