"""Dynamic program over local edge orders, with no bound on the number of labels.

A good labeling only matters through how edges sharing a vertex compare.
So instead of labels each vertex carries a weak order on its incident edges,
which is a partial orientation of the line graph with no dicycle on three
edges at one vertex. A walk is summarised by its two end edges and its slope
word: the comparisons along the walk with ties dropped and repeats merged.
"+-+" is a walk that rises, falls and rises again. Four or more letters mean
two internal extrema of one kind, and such a walk can never close into a bad
cycle, so it is dropped.

Signature at a node: the order at each bag vertex over its edges to bag and
forgotten vertices, and the minimal slope words of walks between bag
vertices through forgotten ones. Orders are kept in full so that the order
of every vertex can be read off at the node that forgets it.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Optional

from .brute import SearchBudget, _Counter
from .graph import Graph, is_forest
from .labeling import EdgeLabeling, is_good_labeling
from .td import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition

_FLIP = str.maketrans("+-", "-+")


def _sign(order: dict, e: int, f: int) -> str:
    a, b = order[e], order[f]
    return "+" if a < b else "-" if a > b else ""


def _glue(*parts: str) -> str:
    out: list[str] = []
    for ch in "".join(parts):
        if not out or out[-1] != ch:
            out.append(ch)
    return "".join(out)


def _reverse(word: str) -> str:
    return word[::-1].translate(_FLIP)


def _cycle_is_bad(word: str) -> bool:
    """At most one local minimum around the cycle."""
    w = _glue(word)
    while len(w) > 1 and w[0] == w[-1]:
        w = w[:-1]
    return len(w) <= 2


def _subsequence(a: str, b: str) -> bool:
    it = iter(b)
    return all(ch in it for ch in a)


def _minimal(entries) -> frozenset:
    # Inserting letters into a word never removes a sign change, so a walk
    # whose word is a subsequence of another's is at least as constraining.
    groups: dict[tuple, set] = defaultdict(set)
    for u, w, eu, ew, word in entries:
        groups[u, w, eu, ew].add(word)
    out = set()
    for key, words in groups.items():
        for a in words:
            if not any(b != a and _subsequence(b, a) for b in words):
                out.add(key + (a,))
    return frozenset(out)


def _insertions(order: dict, e: int):
    """Every way to place e into a weak order given as edge -> dense rank."""
    k = max(order.values(), default=-1) + 1
    for pos in range(2 * k + 1):
        r, tie = divmod(pos, 2)
        new = {f: (q + 1 if not tie and q >= r else q) for f, q in order.items()}
        new[e] = r
        yield new


def _dense(order: dict, keep) -> tuple:
    ranks = sorted({order[e] for e in keep})
    at = {r: i for i, r in enumerate(ranks)}
    return tuple(sorted((e, at[order[e]]) for e in keep))


def _freeze(orders: dict) -> tuple:
    return tuple(sorted((v, tuple(sorted(o.items()))) for v, o in orders.items()))


def _thaw(frozen: tuple) -> dict:
    return {v: dict(o) for v, o in frozen}


def _merge(a: dict, b: dict):
    """Weak orders on the union of a's and b's edges restricting to both."""
    private = [e for e in b if e not in a]
    want = {}
    placed = [e for e in b if e in a]
    candidates = [a]
    for e in private:
        placed.append(e)
        want = _dense(b, placed)
        candidates = [o for old in candidates for o in _insertions(old, e)
                      if _dense(o, placed) == want]
    target = _dense(b, list(b))
    return [o for o in candidates if _dense(o, list(b)) == target]


def _trim(G: Graph, bag, orders: dict, f) -> dict:
    """Drop forgotten edges no walk ends on. Nothing consults their place in
    the order again, so any extension of the recorded snapshots will do."""
    used = {(u, eu) for u, _, eu, _, _ in f} | {(w, ew) for _, w, _, ew, _ in f}
    out = {}
    for u, order in orders.items():
        keep = [e for e in order if G.other(e, u) in bag or (u, e) in used]
        out[u] = dict(_dense(order, keep)) if len(keep) < len(order) else order
    return out


def _forget(G: Graph, v: int, bag_y, orders: dict, f_y):
    """(orders, walk entries) after forgetting v, or None on a bad closed walk."""
    at_v = orders[v]
    pieces: dict[int, list] = defaultdict(list)  # u -> [(e_u, e_v, word u->v)]
    kept = []
    for ent in f_y:
        u, w, eu, ew, word = ent
        if u == v:
            pieces[w].append((ew, eu, _reverse(word)))
        elif w == v:
            pieces[u].append((eu, ew, word))
        else:
            kept.append(ent)
    for e in at_v:
        u = G.other(e, v)
        if u in bag_y:
            pieces[u].append((e, e, ""))
    ends = sorted(pieces)
    for i, u in enumerate(ends):
        for w in ends[i:]:
            for j, (eu, ev, w1) in enumerate(pieces[u]):
                for k, (ew, ev2, w2) in enumerate(pieces[w]):
                    if ev == ev2:
                        continue
                    word = _glue(w1, _sign(at_v, ev, ev2), _reverse(w2))
                    if u == w:
                        if k <= j or eu == ew:
                            continue
                        if _cycle_is_bad(word + _sign(orders[u], ew, eu)):
                            return None
                    elif len(word) < 4:
                        kept.append((u, w, eu, ew, word))
    rest = {u: o for u, o in orders.items() if u != v}
    f = _minimal(kept)
    return _trim(G, set(bag_y) - {v}, rest, f), f


def _doomed(G: Graph, bag, orders: dict, f) -> bool:
    """True if forgetting the whole bag now would already close a bad walk.
    Later nodes only add edges, so the signature could never reach the root."""
    bag = set(bag)
    for v in sorted(bag):
        res = _forget(G, v, bag, orders, f)
        if res is None:
            return True
        bag.discard(v)
        orders, f = res
    return False


def _extend(G: Graph, bag, orders: dict, f, new: list[int]):
    """Place the new edges one at a time into the orders at both ends,
    cutting branches whose bag already holds a bad cycle."""
    if not new:
        yield orders
        return
    e, rest = new[0], new[1:]
    u, v = G.edges[e]
    for at_u in _insertions(orders[u], e):
        for at_v in _insertions(orders[v], e):
            nxt = dict(orders)
            nxt[u], nxt[v] = at_u, at_v
            if not _doomed(G, bag, nxt, f):
                yield from _extend(G, bag, nxt, f, rest)


def _run(G: Graph, ntd: NiceTreeDecomposition, stats: Optional[dict], counter: _Counter):
    nodes = ntd.nodes
    tables: list[dict] = [None] * len(nodes)
    peak = 0
    for i, nd in enumerate(nodes):
        table: dict = {}
        if nd.kind == LEAF:
            table[((), frozenset())] = None
        elif nd.kind == INTRODUCE:
            (ch,) = nd.children
            v = nd.vertex
            new = [e for e in G.incident(v) if G.other(e, v) in nd.bag]
            for sig in tables[ch]:
                start = _thaw(sig[0])
                start[v] = {}
                for orders in _extend(G, nd.bag, start, sig[1], new):
                    counter.tick()
                    table.setdefault((_freeze(orders), sig[1]), sig)
        elif nd.kind == FORGET:
            (ch,) = nd.children
            for sig in tables[ch]:
                res = _forget(G, nd.vertex, nodes[ch].bag, _thaw(sig[0]), sig[1])
                if res is not None:
                    table.setdefault((_freeze(res[0]), res[1]), sig)
        elif nd.kind == JOIN:
            a, b = nd.children
            bag_edges = {v: [e for e in G.incident(v) if G.other(e, v) in nd.bag] for v in nd.bag}
            by_shared = defaultdict(list)
            for sig in tables[b]:
                ob = _thaw(sig[0])
                by_shared[_freeze({v: dict(_dense(ob[v], bag_edges[v])) for v in ob})].append((sig, ob))
            for s1 in tables[a]:
                oa = _thaw(s1[0])
                shared = _freeze({v: dict(_dense(oa[v], bag_edges[v])) for v in oa})
                for s2, ob in by_shared.get(shared, []):
                    f = _minimal(s1[1] | s2[1])
                    ta, tb = _trim(G, nd.bag, oa, f), _trim(G, nd.bag, ob, f)
                    verts = sorted(oa)
                    for merged in product(*(_merge(ta[v], tb[v]) for v in verts)):
                        counter.tick()
                        orders = dict(zip(verts, merged))
                        key = (_freeze(orders), f)
                        if key not in table and not _doomed(G, nd.bag, orders, f):
                            table[key] = (s1, s2)
        else:
            raise ValueError(f"unknown node kind {nd.kind!r}")
        tables[i] = table
        peak = max(peak, len(table))
    if stats is not None:
        stats["max_signatures"] = peak
        stats["total_signatures"] = sum(len(t) for t in tables)
    return tables


def _collect_orders(G: Graph, ntd: NiceTreeDecomposition, tables) -> dict:
    """A weak order at every vertex extending all snapshots on the chosen path.

    The snapshots are restrictions of one evolving order, so their union of
    ties and strict pairs is consistent; ranks are longest chains below.
    """
    snaps: dict[int, list] = defaultdict(list)
    stack = [(ntd.root, next(iter(tables[ntd.root])))]
    while stack:
        i, sig = stack.pop()
        nd = ntd.nodes[i]
        for v, order in sig[0]:
            snaps[v].append(dict(order))
        pred = tables[i][sig]
        if nd.kind == JOIN:
            stack += [(nd.children[0], pred[0]), (nd.children[1], pred[1])]
        elif nd.children:
            stack.append((nd.children[0], pred))
    return {v: _combine(G.incident(v), snaps[v]) for v in range(G.n)}


def _combine(edges: list[int], snaps: list[dict]) -> dict:
    parent = {e: e for e in edges}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for order in snaps:
        by_rank: dict[int, list] = defaultdict(list)
        for e, r in order.items():
            by_rank[r].append(e)
        for cls in by_rank.values():
            for e in cls[1:]:
                parent[find(e)] = find(cls[0])
    below: dict = defaultdict(set)
    for order in snaps:
        for e, r in order.items():
            for f, q in order.items():
                if r < q:
                    below[find(f)].add(find(e))
    rank: dict = {}

    def depth(x):
        if x not in rank:
            rank[x] = 0  # provisional, guards against a cycle looping forever
            rank[x] = 1 + max((depth(y) for y in below[x]), default=-1)
        return rank[x]

    return {e: depth(find(e)) for e in edges}


def labeling_from_orders(G: Graph, orders: dict) -> list[int]:
    """Peel sources of the line graph: tied edges sharing a vertex form one
    block, and a block all of whose remaining neighbours are larger gets the
    next label."""
    parent = list(range(G.m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in range(G.n):
        es = G.incident(v)
        for e in es:
            for f in es:
                if e < f and orders[v][e] == orders[v][f]:
                    parent[find(e)] = find(f)
    below: dict[int, set] = defaultdict(set)  # block -> blocks strictly below it
    for v in range(G.n):
        es = G.incident(v)
        for e in es:
            for f in es:
                if orders[v][e] < orders[v][f]:
                    below[find(f)].add(find(e))
    blocks = {find(e) for e in range(G.m)}
    level: dict[int, int] = {}
    rnd = 0
    while len(level) < len(blocks):
        rnd += 1
        sources = [b for b in blocks if b not in level and all(x in level for x in below[b])]
        if not sources:
            raise AssertionError("local orders contain a partial dicycle")
        for b in sources:
            level[b] = rnd
    return [level[find(e)] for e in range(G.m)]


def dp_orientation_gel(G: Graph, ntd: NiceTreeDecomposition,
                       stats: Optional[dict] = None,
                       budget: Optional[SearchBudget] = None) -> Optional[tuple[EdgeLabeling, int]]:
    """(good labeling, number of labels it uses), or None if G has no gel.

    The label count comes from peeling one recovered orientation and is an
    upper bound on the minimum, not the minimum itself.
    """
    if is_forest(G):
        return EdgeLabeling([1] * G.m), 1
    tables = _run(G, ntd, stats, _Counter(budget or SearchBudget()))
    if not tables[ntd.root]:
        return None
    orders = _collect_orders(G, ntd, tables)
    lab = EdgeLabeling(labeling_from_orders(G, orders))
    verdict = is_good_labeling(G, lab)
    if not verdict.good:
        raise AssertionError(f"reconstructed labeling is not good: {verdict}")
    return lab, max(lab, default=0)
