"""Edge-labelings, the goodness verifier, and labeling relations.

A labeling is good when no ordered pair of vertices is joined by two distinct
non-decreasing ("increasing") paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Graph

EQUAL, GREATER, SMALLER = 0, 1, 2


class NotGoodError(ValueError):
    """A routine that needs a good labeling was handed a bad one."""


class RelationError(ValueError):
    """A labeling relation violates reflexivity, symmetry or transitivity."""


class CycleCapExceeded(RuntimeError):
    pass


class EdgeLabeling(tuple):
    """Immutable tuple of non-negative integer labels indexed by edge id."""

    def __new__(cls, labels: Iterable[int] = ()):
        vals = tuple(int(x) for x in labels)
        if any(x < 0 for x in vals):
            raise ValueError("labels must be non-negative")
        return super().__new__(cls, vals)

    @property
    def c(self) -> int:
        return len(set(self))

    def __repr__(self) -> str:
        return f"EdgeLabeling({list(self)})"


def normalize(labels: Sequence[int]) -> EdgeLabeling:
    """Order-preserving relabeling onto 1..c."""
    rank = {v: i + 1 for i, v in enumerate(sorted(set(labels)))}
    return EdgeLabeling(rank[x] for x in labels)


@dataclass(frozen=True)
class GoodnessVerdict:
    good: bool
    pair: Optional[tuple[int, int]] = None
    paths: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    cycle: Optional[tuple[int, ...]] = None

    @property
    def status(self) -> str:
        return "good" if self.good else "bad"


GOOD = GoodnessVerdict(True)


def _check_length(G: Graph, labels: Sequence[int]) -> None:
    if len(labels) != G.m:
        raise ValueError(f"labeling has {len(labels)} entries, graph has {G.m} edges")


def _mono_components(G: Graph, key: Sequence[int], es: Optional[Iterable[int]] = None):
    """Components of each label class, as (label, sorted vertices, edge ids).

    Sorted by label, then by smallest vertex. `es` restricts to a subset of edges.
    """
    by_label: dict[int, list[int]] = {}
    for e in (range(G.m) if es is None else es):
        by_label.setdefault(key[e], []).append(e)
    out = []
    for lab in sorted(by_label):
        parent: dict[int, int] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in by_label[lab]:
            u, v = G.edges[e]
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, tuple[list[int], list[int]]] = {}
        for x in parent:
            groups.setdefault(find(x), ([], []))[0].append(x)
        for e in by_label[lab]:
            groups[find(G.edges[e][0])][1].append(e)
        for r in sorted(groups):
            vs, ces = groups[r]
            out.append((lab, sorted(vs), ces))
    return out


def _tree_path(adj: dict[int, list[int]], a: int, b: int) -> list[int]:
    """Path from a to b in a forest given as adjacency dict (BFS)."""
    prev = {a: a}
    queue = [a]
    for x in queue:
        if x == b:
            break
        for y in adj.get(x, ()):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def _find_cycle(vertices: list[int], edges: list[int], G: Graph) -> list[int]:
    """A cycle (vertex list, closed implicitly) in the given connected edge set."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    parent: dict[int, int] = {}
    for e in edges:
        u, v = G.edges[e]
        ru, rv = u, v
        while ru in parent:
            ru = parent[ru]
        while rv in parent:
            rv = parent[rv]
        if ru == rv:
            return _tree_path(adj, u, v)
        parent[ru] = rv
        adj[u].append(v)
        adj[v].append(u)
    raise AssertionError("edge set is acyclic")


def is_good_labeling(G: Graph, labels: Sequence[int]) -> GoodnessVerdict:
    """Decide goodness by growing increasing-path trees level by level.

    Bad verdicts carry either a monochromatic cycle or a vertex pair (u, x) with
    two distinct increasing u-x paths.
    """
    _check_length(G, labels)
    comps = _mono_components(G, labels)
    for lab, vs, es in comps:
        if len(es) != len(vs) - 1:
            return GoodnessVerdict(False, cycle=tuple(_find_cycle(vs, es, G)))

    levels: list[list[tuple[list[int], list[int]]]] = []
    last = None
    for lab, vs, es in comps:
        if lab != last:
            levels.append([])
            last = lab
        levels[-1].append((vs, es))

    for root in range(G.n):
        parent = {root: root}
        depth = {root: 0}
        for level in levels:
            for vs, es in level:
                hits = [x for x in vs if x in parent]
                if len(hits) == 0:
                    continue
                if len(hits) == 1:
                    _attach(G, parent, depth, hits[0], vs, es)
                    continue
                return _two_path_witness(G, parent, depth, vs, es, hits)
    return GOOD


def _attach(G, parent, depth, a, vs, es):
    adj: dict[int, list[int]] = {v: [] for v in vs}
    for e in es:
        u, v = G.edges[e]
        adj[u].append(v)
        adj[v].append(u)
    stack = [a]
    seen = {a}
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                parent[y] = x
                depth[y] = depth[x] + 1
                stack.append(y)


def _root_path(parent, x):
    path = [x]
    while parent[path[-1]] != path[-1]:
        path.append(parent[path[-1]])
    return path[::-1]


def _two_path_witness(G, parent, depth, vs, es, hits):
    adj: dict[int, list[int]] = {v: [] for v in vs}
    for e in es:
        u, v = G.edges[e]
        adj[u].append(v)
        adj[v].append(u)
    y = hits[0]
    # Walk the component from y to the nearest other tree vertex x; the walk's
    # interior avoids the tree.
    prev = {y: y}
    queue = [y]
    x = None
    for a in queue:
        for b in adj[a]:
            if b in prev:
                continue
            prev[b] = a
            if b in parent:
                x = b
                break
            queue.append(b)
        if x is not None:
            break
    comp_path = [x]
    while comp_path[-1] != y:
        comp_path.append(prev[comp_path[-1]])
    comp_path.reverse()  # y ... x

    ry, rx = _root_path(parent, y), _root_path(parent, x)
    k = 0
    while k < min(len(rx), len(ry)) and rx[k] == ry[k]:
        k += 1
    u = rx[k - 1]
    if u == x:
        x, y = y, x
        rx, ry = ry, rx
        comp_path.reverse()
    P = rx[k - 1:]
    P2 = ry[k - 1:] + comp_path[1:]
    return GoodnessVerdict(False, pair=(u, x), paths=(tuple(P), tuple(P2)))


def is_good_fast(G: Graph, labels: Sequence[int], edge_ids: Optional[Iterable[int]] = None) -> bool:
    """Boolean goodness test with bitmasks, optionally on a subset of edges.

    Used for search pruning; agrees with is_good_labeling on full labelings.
    """
    ids = range(G.m) if edge_ids is None else edge_ids
    by_label: dict[int, list[int]] = {}
    for e in ids:
        by_label.setdefault(labels[e], []).append(e)
    levels = []
    touched = 0
    for lab in sorted(by_label):
        comps = _label_comps(G, by_label[lab])
        if comps is None:
            return False
        levels.append(comps)
        for c in comps:
            touched |= c
    t = touched
    while t:
        low = t & -t
        reach = low
        for comps in levels:
            grow = 0
            for c in comps:
                inter = c & reach
                if inter:
                    if inter & (inter - 1):
                        return False
                    grow |= c
            reach |= grow
        t ^= low
    return True


def _label_comps(G: Graph, es: list[int]) -> Optional[list[int]]:
    """Vertex bitmasks of components of the edge set, or None if it has a cycle."""
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in es:
        u, v = G.edges[e]
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        parent[ru] = rv
    masks: dict[int, int] = {}
    for x in parent:
        r = find(x)
        masks[r] = masks.get(r, 0) | (1 << x)
    return list(masks.values())


def check_increasing_path(G: Graph, labels: Sequence[int], path: Sequence[int]) -> bool:
    """True iff `path` is a simple path of G with non-decreasing labels."""
    if len(set(path)) != len(path):
        return False
    prev = None
    for a, b in zip(path, path[1:]):
        if not G.has_edge(a, b):
            return False
        lab = labels[G.edge_id(a, b)]
        if prev is not None and lab < prev:
            return False
        prev = lab
    return True


def check_witness(G: Graph, labels: Sequence[int], verdict: GoodnessVerdict) -> bool:
    """Validate a bad verdict's witness against the labeling."""
    if verdict.good:
        return False
    if verdict.cycle is not None:
        cyc = list(verdict.cycle)
        if len(cyc) < 3 or len(set(cyc)) != len(cyc):
            return False
        ring = list(zip(cyc, cyc[1:] + cyc[:1]))
        if not all(G.has_edge(a, b) for a, b in ring):
            return False
        return len({labels[G.edge_id(a, b)] for a, b in ring}) == 1
    P, Q = verdict.paths
    x, y = verdict.pair
    return (P != Q and P[0] == Q[0] == x and P[-1] == Q[-1] == y and len(P) > 1
            and check_increasing_path(G, labels, P) and check_increasing_path(G, labels, Q))


def monotone_path(G: Graph, labels: Sequence[int], u: int, v: int, increasing: bool = True,
                  restrict: Optional[Iterable[int]] = None) -> Optional[list[int]]:
    """The unique monotone u-v path (vertex list), or None.

    With `restrict`, only the subgraph induced by those vertices is searched.
    Raises NotGoodError if the labeling is not good there, since uniqueness then fails.
    """
    _check_length(G, labels)
    allowed = None if restrict is None else set(restrict)
    if allowed is not None and (u not in allowed or v not in allowed):
        return None
    es = [e for e, (a, b) in enumerate(G.edges)
          if allowed is None or (a in allowed and b in allowed)]
    key = labels if increasing else [-x for x in labels]
    comps = _mono_components(G, key, es)
    parent = {u: u}
    depth = {u: 0}
    for _, vs, ces in comps:
        if len(ces) != len(vs) - 1:
            raise NotGoodError("monochromatic cycle in the searched subgraph")
        hits = [x for x in vs if x in parent]
        if len(hits) >= 2:
            raise NotGoodError("two monotone paths share endpoints in the searched subgraph")
        if hits:
            _attach(G, parent, depth, hits[0], vs, ces)
    if v not in parent:
        return None
    return _root_path(parent, v)


# --- cycle oracle -----------------------------------------------------------


def simple_cycles(G: Graph, cap: int = 10**6):
    """Yield each simple cycle once as a vertex list starting at its minimum vertex."""
    count = 0
    for s in range(G.n):
        path = [s]
        on_path = {s}
        stack = [iter(w for w in G.adj[s] if w > s)]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if s in G.adj[nxt] and len(path) >= 2 and path[1] < nxt:
                count += 1
                if count > cap:
                    raise CycleCapExceeded(f"more than {cap} cycles")
                yield path + [nxt]
            path.append(nxt)
            on_path.add(nxt)
            stack.append(iter(w for w in G.adj[nxt] if w > s and w not in on_path))


def cycle_extrema(seq: Sequence[int]) -> tuple[int, int]:
    """(local minima, local maxima) of a cyclic label sequence, plateau-aware."""
    k = len(seq)
    start = next((i for i in range(k) if seq[i] != seq[i - 1]), None)
    if start is None:
        return 0, 0
    runs = []
    for i in range(k):
        x = seq[(start + i) % k]
        if not runs or runs[-1] != x:
            runs.append(x)
    if runs[0] == runs[-1]:
        runs.pop()
    r = len(runs)
    mins = sum(1 for i in range(r) if runs[i] < runs[i - 1] and runs[i] < runs[(i + 1) % r])
    maxs = sum(1 for i in range(r) if runs[i] > runs[i - 1] and runs[i] > runs[(i + 1) % r])
    return mins, maxs


def cycle_minima_oracle(G: Graph, labels: Sequence[int], cap: int = 10**6) -> GoodnessVerdict:
    """Good iff every cycle has at least two local minima or two local maxima."""
    _check_length(G, labels)
    for cyc in simple_cycles(G, cap):
        k = len(cyc)
        seq = [labels[G.edge_id(cyc[i], cyc[(i + 1) % k])] for i in range(k)]
        mins, maxs = cycle_extrema(seq)
        if mins >= 2 or maxs >= 2:
            continue
        if mins == 0:
            return GoodnessVerdict(False, cycle=tuple(cyc))
        # Edge i joins cyc[i] and cyc[i+1]. Start at the first edge of the
        # minimum plateau and end at the first vertex of the maximum plateau.
        lo, hi = min(seq), max(seq)
        i = next(j for j in range(k) if seq[j] == lo and seq[j - 1] != lo)
        p = next(j for j in range(k) if seq[j] == hi and seq[j - 1] != hi)
        x, y = cyc[i], cyc[p]
        fwd = [cyc[(i + t) % k] for t in range((p - i) % k + 1)]
        back = [cyc[(i - t) % k] for t in range((i - p) % k + 1)]
        return GoodnessVerdict(False, pair=(x, y), paths=(tuple(fwd), tuple(back)))
    return GOOD


# --- labeling relations ----------------------------------------------------

Relation = tuple[tuple[int, ...], ...]


def rel_from_labeling(labels: Sequence[int]) -> Relation:
    return tuple(
        tuple(EQUAL if a == b else (GREATER if a > b else SMALLER) for b in labels)
        for a in labels)


def is_valid_relation(rel: Sequence[Sequence[int]]) -> bool:
    m = len(rel)
    for e in range(m):
        if len(rel[e]) != m or rel[e][e] != EQUAL:
            return False
        for f in range(m):
            a, b = rel[e][f], rel[f][e]
            if a not in (0, 1, 2) or (a == EQUAL) != (b == EQUAL) or (a == GREATER) != (b == SMALLER):
                return False
    for e in range(m):
        for f in range(m):
            ef = rel[e][f]
            for g in range(m):
                fg = rel[f][g]
                eg = rel[e][g]
                if ef == fg == GREATER and eg != GREATER:
                    return False
                if ef == fg == EQUAL and eg != EQUAL:
                    return False
                if ef + fg == 1 and eg != GREATER:
                    return False
    return True


def labeling_from_rel(rel: Sequence[Sequence[int]]) -> EdgeLabeling:
    """Level peeling: label 0 for the minimal edges, then 1 for the next layer, ..."""
    m = len(rel)
    out: list[Optional[int]] = [None] * m
    remaining = set(range(m))
    level = 0
    while remaining:
        layer = [e for e in remaining
                 if not any(rel[e][f] == GREATER for f in remaining if f != e)]
        if not layer:
            raise RelationError("strict order contains a cycle")
        for e in layer:
            out[e] = level
        remaining.difference_update(layer)
        level += 1
    lab = EdgeLabeling(out)  # type: ignore[arg-type]
    if rel_from_labeling(lab) != tuple(tuple(r) for r in rel):
        raise RelationError("relation is not reflexive, symmetric and transitive")
    return lab


def is_good_relation(G: Graph, rel: Sequence[Sequence[int]]) -> bool:
    return is_good_labeling(G, labeling_from_rel(rel)).good


def is_standard(rel: Sequence[Sequence[int]], L_small: Iterable[int], L_big: Iterable[int]) -> bool:
    """All pairs outside L strict; L_small below everything else, L_big above, each tied."""
    small, big = set(L_small), set(L_big)
    if small & big:
        return False
    m = len(rel)
    for e in range(m):
        for f in range(m):
            if e == f:
                continue
            r = rel[e][f]
            if e in small:
                if r != (EQUAL if f in small else SMALLER):
                    return False
            elif e in big:
                if r != (EQUAL if f in big else GREATER):
                    return False
            elif f not in small and f not in big and r == EQUAL:
                return False
    return True
