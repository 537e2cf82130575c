"""Dynamic programs over nice tree decompositions.

dp_c_gel keeps, per node x, signatures (lambda_x, f_x): the labels of the
edges inside the bag, and for pairs of bag vertices the minimal label-types
of walks between them through forgotten vertices. Each walk entry also names
its two end edges. A walk is only extended through a vertex along two
different edges, and a closed walk is only formed from two different edges
at its base. Such a non-backtracking closed walk with at most one local
minimum always contains a bad cycle, so closed walks are judged the moment
they appear and never stored.

An end edge leads into the forgotten part, where nothing new can touch it,
so only equality between names at the same vertex matters. Names are
therefore replaced by canonical local ones (-1, -2, ... per vertex), which
merges signatures that differ only by which forgotten edge carries which
walk.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Optional

from .brute import SearchBudget, _Counter
from .graph import Graph, is_forest
from .labeling import EdgeLabeling, is_good_fast, is_good_labeling
from .pathtypes import (EMPTY, GOOD, LabelType, closed_walk_is_bad, concat_label_types,
                        minimal_tags, tag_le)
from .td import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition

# f_x entry: (u, w, e_u, e_w, LabelType) with u < w; the type reads from u to w.
# e_u is an edge id (>= 0) or a local name (< 0) of an edge at u.


def _bag_edges(G: Graph, bag) -> tuple[int, ...]:
    return tuple(sorted({e for v in bag for e in G.incident(v) if G.other(e, v) in bag}))


def _minimal(entries) -> list:
    groups: dict[tuple, set] = defaultdict(set)
    for u, w, eu, ew, t in entries:
        groups[(u, w, eu, ew, t.l1, t.l2)].add(t.tau)
    out = []
    for (u, w, eu, ew, l1, l2), tags in groups.items():
        if len(tags) == 1:
            out.append((u, w, eu, ew, LabelType(l1, next(iter(tags)), l2)))
        else:
            out += [(u, w, eu, ew, LabelType(l1, tau, l2)) for tau in minimal_tags(tags)]
    return out


def _canon(entries) -> frozenset:
    """Rename end edges at every vertex to -1, -2, ... ordered by how they are used."""
    profile: dict[tuple, list] = defaultdict(list)
    for u, w, eu, ew, t in entries:
        profile[u, eu].append((w, t))
        profile[w, ew].append((u, t.reversed()))
    per_vertex: dict[int, list] = defaultdict(list)
    for (x, e), uses in profile.items():
        per_vertex[x].append((sorted(uses), e))
    rename = {}
    for x, names in per_vertex.items():
        names.sort()
        for i, (_, e) in enumerate(names):
            rename[x, e] = -1 - i
    return frozenset((u, w, rename[u, eu], rename[w, ew], t) for u, w, eu, ew, t in entries)


def _normalize(entries, minimize: bool) -> frozenset:
    if not minimize:
        return frozenset(entries)
    return _canon(_minimal(entries))


def _shift_apart(fa: frozenset, fb: frozenset) -> frozenset:
    """fb with its local names moved past those used in fa at each vertex."""
    used: dict[int, int] = defaultdict(int)
    for u, w, eu, ew, _ in fa:
        used[u] = min(used[u], eu)
        used[w] = min(used[w], ew)
    return frozenset((u, w, eu + used[u] if eu < 0 else eu, ew + used[w] if ew < 0 else ew, t)
                     for u, w, eu, ew, t in fb)


def _permits(a: dict, b: dict) -> bool:
    """Every walk of a is matched in b by one with the same ends and a type
    at most as large, so b constrains the rest of the graph at least as much."""
    for key, tags in a.items():
        other = b.get(key)
        if other is None or not all(any(tag_le(s, t) for s in other) for t in tags):
            return False
    return True


def _prune(table: dict, cap: int = 2000) -> dict:
    """Drop signatures dominated by a more permissive one with the same labels
    and the same walk ends. Groups above `cap` are left alone, since the
    pairwise test is quadratic and only ever saves space."""
    groups: dict[tuple, list] = defaultdict(list)
    for sig in table:
        by_key: dict[tuple, set] = defaultdict(set)
        for u, w, eu, ew, t in sig[1]:
            by_key[(u, w, eu, ew, t.l1, t.l2)].add(t.tau)
        groups[sig[0], frozenset(by_key)].append((sig, by_key))
    out = {}
    for members in groups.values():
        if len(members) == 1 or len(members) > cap:
            for sig, _ in members:
                out[sig] = table[sig]
            continue
        kept: list = []
        for sig, keyed in members:
            if any(_permits(k, keyed) for _, k in kept):
                continue
            kept = [(s, k) for s, k in kept if not _permits(keyed, k)]
            kept.append((sig, keyed))
        for sig, _ in kept:
            out[sig] = table[sig]
    return out


def _forget(G: Graph, v: int, bag_y, edges_y, lam_y, f_y):
    """(lambda, walk entries) after forgetting v, or None if a bad closed walk appears."""
    lab = dict(zip(edges_y, lam_y))
    pieces: dict[int, list] = defaultdict(list)  # u -> [(e_u, e_v, type u->v)]
    kept = []
    for ent in f_y:
        u, w, eu, ew, t = ent
        if u == v:
            pieces[w].append((ew, eu, t.reversed()))
        elif w == v:
            pieces[u].append((eu, ew, t))
        else:
            kept.append(ent)
    for e in G.incident(v):
        u = G.other(e, v)
        if u in bag_y:
            pieces[u].append((e, e, LabelType(lab[e], EMPTY, lab[e])))
    ends = sorted(pieces)
    for i, u in enumerate(ends):
        for w in ends[i:]:
            for j, (eu, ev, t1) in enumerate(pieces[u]):
                for k, (ew, ev2, t2) in enumerate(pieces[w]):
                    if ev == ev2:
                        continue
                    if u == w:
                        if k <= j or eu == ew:
                            continue
                        if closed_walk_is_bad(concat_label_types(t1, t2.reversed())):
                            return None
                        continue
                    t = concat_label_types(t1, t2.reversed())
                    if t.tau != GOOD:
                        kept.append((u, w, eu, ew, t))
    lam = tuple(l for e, l in zip(edges_y, lam_y) if v not in G.edges[e])
    return lam, kept


def _doomed(G: Graph, bag, edges, lam, f) -> bool:
    """True if forgetting the whole bag now would already close a bad walk.

    Later nodes only add edges and walks, so such a signature can never
    reach the root.
    """
    bag = set(bag)
    edges = [e for e in edges]
    for v in sorted(bag):
        res = _forget(G, v, bag, edges, lam, f)
        if res is None:
            return True
        bag.discard(v)
        edges = [e for e in edges if v not in G.edges[e]]
        lam, f = res[0], _minimal(res[1])
    return False


def _by_pair(f) -> dict:
    out: dict[tuple, list] = defaultdict(list)
    for ent in f:
        out[ent[0], ent[1]].append(ent[4])
    return {k: frozenset(v) for k, v in out.items()}


_conflict_cache: dict = {}


def _conflict(wa: frozenset, wb: frozenset) -> bool:
    """Some walk type of wa and some of wb, between the same two vertices,
    close a bad walk. Walks from the two sides of a join never share edges."""
    key = (wa, wb)
    hit = _conflict_cache.get(key)
    if hit is None:
        hit = any(closed_walk_is_bad(concat_label_types(x, y.reversed())) for x in wa for y in wb)
        if len(_conflict_cache) > 1_000_000:
            _conflict_cache.clear()
        _conflict_cache[key] = hit
    return hit


def _compatible(s1, group: list, index: dict) -> list:
    """Members of `group` that close no bad walk with s1 using one walk from
    each side. A cheap necessary condition checked before the full look-ahead."""
    mask = (1 << len(group)) - 1
    for pair, wa in _by_pair(s1[1]).items():
        bad = 0
        for wb, bits in index.get(pair, {}).items():
            if _conflict(wa, wb):
                bad |= bits
        mask &= ~bad
        if not mask:
            return []
    return [s2 for j, s2 in enumerate(group) if mask >> j & 1]


def _pair_index(group: list) -> dict:
    index: dict[tuple, dict] = defaultdict(lambda: defaultdict(int))
    for j, s2 in enumerate(group):
        for pair, ws in _by_pair(s2[1]).items():
            index[pair][ws] |= 1 << j
    return index


def _extend(G: Graph, old, lam_y, new, c: int, labels: list[int]):
    """Labelings of the new bag edges that keep the bag's own edges good.

    A bad cycle inside the bag can never be repaired, so such branches are cut
    as soon as they appear. Yields the shared `labels` buffer.
    """
    for e, l in zip(old, lam_y):
        labels[e] = l
    placed = list(old)

    def rec(j: int):
        if j == len(new):
            yield labels
            return
        e = new[j]
        placed.append(e)
        for l in range(1, c + 1):
            labels[e] = l
            if is_good_fast(G, labels, placed):
                yield from rec(j + 1)
        placed.pop()

    yield from rec(0)


def _run(G: Graph, ntd: NiceTreeDecomposition, c: int, minimize: bool, stats: Optional[dict],
         counter: _Counter):
    # minimize=False is the plain recurrence: full type sets, raw edge ids,
    # no pruning. The default adds minimal types, canonical names, dominance
    # pruning and the look-ahead, none of which change the answer.
    nodes = ntd.nodes
    edges_of = [_bag_edges(G, nd.bag) for nd in nodes]
    tables: list[dict] = [None] * len(nodes)
    scratch = [0] * G.m
    peak = 0
    for i, nd in enumerate(nodes):
        table: dict = {}

        def add(key, pred):
            counter.tick()
            if key not in table and not (minimize and _doomed(G, nd.bag, edges_of[i], *key)):
                table[key] = pred

        if nd.kind == LEAF:
            table[((), frozenset())] = None
        elif nd.kind == INTRODUCE:
            (ch,) = nd.children
            new = [e for e in G.incident(nd.vertex) if G.other(e, nd.vertex) in nd.bag]
            mine = edges_of[i]
            for sig in tables[ch]:
                for labels in _extend(G, edges_of[ch], sig[0], new, c, scratch):
                    add((tuple(labels[e] for e in mine), sig[1]), sig)
        elif nd.kind == FORGET:
            (ch,) = nd.children
            for sig in tables[ch]:
                res = _forget(G, nd.vertex, nodes[ch].bag, edges_of[ch], sig[0], sig[1])
                counter.tick()
                if res is not None:
                    key = (res[0], _normalize(res[1], minimize))
                    if key not in table:
                        table[key] = sig
        elif nd.kind == JOIN:
            a, b = nd.children
            by_lam = defaultdict(list)
            for sig in tables[b]:
                by_lam[sig[0]].append(sig)
            indexes = {lam: _pair_index(group) for lam, group in by_lam.items()} if minimize else {}
            for s1 in tables[a]:
                group = by_lam.get(s1[0], [])
                if minimize and group:
                    group = _compatible(s1, group, indexes[s1[0]])
                for s2 in group:
                    f2 = _shift_apart(s1[1], s2[1]) if minimize else s2[1]
                    add((s1[0], _normalize(s1[1] | f2, minimize)), (s1, s2))
        else:
            raise ValueError(f"unknown node kind {nd.kind!r}")
        if minimize:
            table = _prune(table)
        tables[i] = table
        peak = max(peak, len(table))
    if stats is not None:
        stats["max_signatures"] = peak
        stats["total_signatures"] = sum(len(t) for t in tables)
        stats["per_node"] = [len(t) for t in tables]
    return tables


def _backtrack(G: Graph, ntd: NiceTreeDecomposition, tables) -> list[int]:
    labels = [0] * G.m
    stack = [(ntd.root, next(iter(tables[ntd.root])))]
    while stack:
        i, sig = stack.pop()
        nd = ntd.nodes[i]
        for e, l in zip(_bag_edges(G, nd.bag), sig[0]):
            labels[e] = l
        pred = tables[i][sig]
        if nd.kind == JOIN:
            stack += [(nd.children[0], pred[0]), (nd.children[1], pred[1])]
        elif nd.children:
            stack.append((nd.children[0], pred))
    return labels


def dp_c_gel(G: Graph, ntd: NiceTreeDecomposition, c: int, minimize: bool = True,
             stats: Optional[dict] = None, budget: Optional[SearchBudget] = None) -> Optional[EdgeLabeling]:
    """A good labeling with values in 1..c, or None if G has none.

    minimize=False runs the plain recurrence with full walk-type sets; the
    answer is the same, only slower. Raises BudgetExhausted when the budget
    (counted in signature candidates) runs out.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    if c == 1:
        return EdgeLabeling([1] * G.m) if is_forest(G) else None
    tables = _run(G, ntd, c, minimize, stats, _Counter(budget or SearchBudget()))
    if not tables[ntd.root]:
        return None
    lab = EdgeLabeling(_backtrack(G, ntd, tables))
    verdict = is_good_labeling(G, lab)
    if not verdict.good:
        raise AssertionError(f"reconstructed labeling is not good: {verdict}")
    return lab


def min_gel_via_iteration(G: Graph, ntd: NiceTreeDecomposition, stats: Optional[dict] = None,
                          budget: Optional[SearchBudget] = None) -> Optional[tuple[int, EdgeLabeling]]:
    """(minimum c, a c-gel) by trying c = 1, 2, ..., m; None if G is bad."""
    if is_forest(G):
        return 1, EdgeLabeling([1] * G.m)
    for c in range(2, G.m + 1):
        lab = dp_c_gel(G, ntd, c, stats=stats, budget=budget)
        if lab is not None:
            return c, lab
    return None
