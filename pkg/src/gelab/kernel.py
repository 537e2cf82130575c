"""Reduction rules, star classification and the nd/vc kernels.

All rules run on a shrinking copy of the input that keeps original vertex ids.
Each deletion is recorded as a RuleStep carrying the removed edges, so the
trace can be replayed on the input and a labeling of the reduced graph can be
lifted back to a labeling of the input (see lift_labeling).

Rules:
  1       K3 or K2,3 subgraph: reject.
  2       tree components are deleted (a forest is always good).
  3       cut vertex v, component C of G - v with G[C + v] good: delete C.
  bridge  every bridge is deleted (a single-edge matching cut).
  4       0-interesting stars of G - X are deleted (needs a modulator X).
  bad     a piece tested for rule 3 turned out bad, so the whole graph is bad.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .brute import BudgetExhausted, SearchBudget, brute_c_gel, brute_gel
from .graph import (Graph, bridges, connected_components, cut_vertices, find_K3_or_K23,
                    is_forest, is_star_forest, is_vertex_cover, neighborhood_diversity)
from .labeling import EdgeLabeling, is_good_labeling, normalize

Pair = tuple[int, int]

RULE3_THRESHOLD = 12
RULE3_BUDGET = SearchBudget(node_cap=200_000, time_cap=5.0)


@dataclass(frozen=True)
class StarInfo:
    center: int
    leaves: tuple[int, ...]
    kind: str                      # boring | zero_interesting | one_interesting
    # leaf -> ("type1" | "type2", its X-neighbor); empty for boring stars
    leaf_kinds: dict = field(default_factory=dict, compare=False)
    center_x_neighbor: Optional[int] = None

    def type2_pairs(self) -> list[tuple[int, int, int]]:
        """(v1, v2, w) for each pair of type-2 leaves sharing X-neighbor w."""
        by_w: dict[int, list[int]] = {}
        for v, (t, w) in sorted(self.leaf_kinds.items()):
            if t == "type2":
                by_w.setdefault(w, []).append(v)
        return [(vs[0], vs[1], w) for w, vs in sorted(by_w.items())]

    def type1_leaves(self) -> list[tuple[int, int]]:
        """(v, u) for each type-1 leaf v with X-neighbor u."""
        return [(v, w) for v, (t, w) in sorted(self.leaf_kinds.items()) if t == "type1"]


@dataclass(frozen=True)
class RuleStep:
    rule: str
    vertices: tuple[int, ...] = ()
    edges: tuple[Pair, ...] = ()
    anchor: Optional[int] = None
    # labels aligned with `edges` forming a good labeling of the removed piece (rule 3)
    labels: Optional[tuple[int, ...]] = None
    star: Optional[StarInfo] = None
    witness: Optional[tuple[str, tuple[int, ...]]] = None

    def to_json(self) -> dict:
        out: dict = {"rule": self.rule}
        if self.vertices:
            out["vertices"] = [v + 1 for v in self.vertices]
        if self.edges:
            out["edges"] = [[a + 1, b + 1] for a, b in self.edges]
        if self.anchor is not None:
            out["anchor"] = self.anchor + 1
        if self.witness is not None:
            out["witness"] = {"kind": self.witness[0], "vertices": [v + 1 for v in self.witness[1]]}
        if self.star is not None:
            out["star"] = {"center": self.star.center + 1, "leaves": [v + 1 for v in self.star.leaves]}
        return out


@dataclass
class ReductionTrace:
    steps: list[RuleStep] = field(default_factory=list)

    def replay(self, G: Graph) -> tuple[Graph, list[int]]:
        """Apply the recorded deletions to G; returns (reduced graph, new -> old vertex map)."""
        alive = set(range(G.n))
        dead_edges: set[Pair] = set()
        for st in self.steps:
            alive.difference_update(st.vertices)
            dead_edges.update(st.edges)
        keep = sorted(alive)
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[a], pos[b]) for a, b in G.edges
                 if a in pos and b in pos and (a, b) not in dead_edges]
        return Graph(len(keep), edges), keep

    def to_json(self) -> list[dict]:
        return [st.to_json() for st in self.steps]


@dataclass
class KernelResult:
    graph: Graph
    vmap: list[int]                 # reduced vertex -> original vertex
    trace: ReductionTrace
    reject: Optional[tuple[str, tuple[int, ...]]] = None   # witness in original ids
    X: Optional[list[int]] = None   # modulator or cover in reduced ids
    stars: list[StarInfo] = field(default_factory=list)     # reduced ids
    components: list[tuple[list[int], int]] = field(default_factory=list)

    @property
    def rejected(self) -> bool:
        return self.reject is not None


class _Reducer:
    """Mutable state: the input graph, live vertices and deleted edges."""

    def __init__(self, G: Graph, X: Optional[Iterable[int]] = None, threshold: int = RULE3_THRESHOLD,
                 c: Optional[int] = None):
        self.G = G
        self.alive = set(range(G.n))
        self.dead: set[Pair] = set()
        self.X = None if X is None else set(X)
        self.threshold = threshold
        self.c = c
        self.trace = ReductionTrace()
        self.reject: Optional[tuple[str, tuple[int, ...]]] = None
        self._bad_cache: dict[frozenset, Optional[list[int]]] = {}

    def current(self) -> tuple[Graph, list[int]]:
        keep = sorted(self.alive)
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[a], pos[b]) for a, b in self.G.edges
                 if a in pos and b in pos and (a, b) not in self.dead]
        return Graph(len(keep), edges), keep

    def _record(self, rule: str, H: Graph, vmap: list[int], drop_vertices: Iterable[int] = (),
                drop_edges: Iterable[int] = (), **extra) -> None:
        dv = set(drop_vertices)
        de = set(drop_edges)
        de.update(e for e, (a, b) in enumerate(H.edges) if a in dv or b in dv)
        pairs = tuple(sorted(self._orig(H, vmap, e) for e in de))
        self.alive.difference_update(vmap[v] for v in dv)
        self.dead.update(pairs)
        self.trace.steps.append(RuleStep(rule, tuple(sorted(vmap[v] for v in dv)), pairs, **extra))

    @staticmethod
    def _orig(H: Graph, vmap: list[int], e: int) -> Pair:
        a, b = vmap[H.edges[e][0]], vmap[H.edges[e][1]]
        return (a, b) if a < b else (b, a)

    # --- individual rules ---------------------------------------------

    def rule1(self, H: Graph, vmap: list[int]) -> bool:
        w = find_K3_or_K23(H)
        if w is None:
            return False
        self.reject = (w[0], tuple(vmap[v] for v in w[1]))
        self.trace.steps.append(RuleStep("1", witness=self.reject))
        return True

    def rule2(self, H: Graph, vmap: list[int]) -> bool:
        changed = False
        for comp in connected_components(H):
            sub, _, _ = H.induced(comp)
            if is_forest(sub):
                self._record("2", H, vmap, drop_vertices=comp)
                changed = True
        return changed

    def _piece_labels(self, P: Graph) -> Optional[list[int]]:
        """Good labeling of a piece, [] if too big or undecided, None if bad."""
        if is_forest(P):
            return [1] * P.m
        if P.n > self.threshold:
            return []
        key = frozenset(P.edges)
        if key in self._bad_cache:
            return self._bad_cache[key]
        try:
            if self.c is None:
                lab = brute_gel(P, RULE3_BUDGET)
            else:
                lab = brute_c_gel(P, self.c, RULE3_BUDGET)
        except BudgetExhausted:
            lab = []
        out = None if lab is None else list(lab)
        self._bad_cache[key] = out
        return out

    def rule3(self, H: Graph, vmap: list[int]) -> bool:
        # Forest pieces first, then smaller pieces, so cheap deletions happen before brute force.
        cands = []
        for v in cut_vertices(H):
            rest = set(range(H.n)) - {v}
            for C in connected_components(H, within=rest):
                if any(H.has_edge(v, x) for x in C):
                    P, pmap, pemap = H.induced(C + [v])
                    cands.append((not is_forest(P), len(C), C, v, P, pmap, pemap))
        cands.sort(key=lambda t: t[:3])
        for _, _, C, v, P, pmap, pemap in cands:
            lab = self._piece_labels(P)
            if lab is None:
                self.reject = ("bad", tuple(sorted(vmap[x] for x in pmap)))
                self.trace.steps.append(RuleStep("bad", witness=self.reject))
                return True
            if not lab:
                continue
            # Keep the piece's labels aligned with the recorded (sorted) edge pairs.
            lab_of = {self._orig(H, vmap, pemap[i]): lab[i] for i in range(P.m)}
            pairs = sorted(lab_of)
            self.alive.difference_update(vmap[x] for x in C)
            self.dead.update(pairs)
            self.trace.steps.append(RuleStep(
                "3", tuple(sorted(vmap[x] for x in C)), tuple(pairs), anchor=vmap[v],
                labels=tuple(lab_of[p] for p in pairs)))
            return True
        return False

    def rule_bridges(self, H: Graph, vmap: list[int]) -> bool:
        bs = bridges(H)
        if not bs:
            return False
        self._record("bridge", H, vmap, drop_edges=bs)
        return True

    def rule4(self, H: Graph, vmap: list[int]) -> bool:
        pos = {v: i for i, v in enumerate(vmap)}
        X = {pos[x] for x in self.X if x in pos}
        changed = False
        for st in classify(H, X):
            if st.kind == "zero_interesting":
                orig = StarInfo(vmap[st.center], tuple(vmap[v] for v in st.leaves), st.kind,
                                {vmap[v]: (t, vmap[w]) for v, (t, w) in st.leaf_kinds.items()})
                self._record("4", H, vmap, drop_vertices=[st.center, *st.leaves], star=orig)
                changed = True
        return changed

    def run(self, rules: Sequence[str], rule1: bool = True) -> None:
        while True:
            if rule1 and self.rule1(*self.current()):
                return
            progressed = False
            for r in rules:
                H, vmap = self.current()
                fn = {"2": self.rule2, "3": self.rule3, "bridge": self.rule_bridges,
                      "4": self.rule4}[r]
                if fn(H, vmap):
                    progressed = True
                    if self.reject is not None:
                        return
                    break
            if not progressed:
                return

    def result(self) -> KernelResult:
        H, vmap = self.current()
        X = None
        if self.X is not None:
            pos = {v: i for i, v in enumerate(vmap)}
            X = sorted(pos[x] for x in self.X if x in pos)
        return KernelResult(H, vmap, self.trace, self.reject, X)


# --- public rule entry points ---------------------------------------------


def apply_rule1(G: Graph) -> Optional[tuple[str, list[int]]]:
    """K3/K2,3 witness if the graph must be rejected, else None."""
    return find_K3_or_K23(G)


def apply_rule3(G: Graph, threshold: int = RULE3_THRESHOLD, c: Optional[int] = None) -> KernelResult:
    """Rules 2 and 3 to a fixpoint (no rejection by Rule 1)."""
    red = _Reducer(G, threshold=threshold, c=c)
    red.run(["2", "3"], rule1=False)
    return red.result()


def apply_matching_cut_bridges(G: Graph) -> KernelResult:
    red = _Reducer(G)
    red.rule_bridges(*red.current())
    return red.result()


def reduce_graph(G: Graph, X: Optional[Iterable[int]] = None, threshold: int = RULE3_THRESHOLD,
                 c: Optional[int] = None, use_bridges: bool = True) -> KernelResult:
    """Rules 1, 2, 3, bridges and (with a modulator X) 4, looped to a fixpoint."""
    rules = ["2", "3"] + (["bridge"] if use_bridges else []) + (["4"] if X is not None else [])
    red = _Reducer(G, X, threshold, c)
    red.run(rules)
    return red.result()


# --- stars ------------------------------------------------------------------


def classify(G: Graph, X: Iterable[int]) -> list[StarInfo]:
    """Classify every component of G - X as a star. No rules are applied."""
    Xs = set(X)
    rest = [v for v in range(G.n) if v not in Xs]
    out = []
    for comp in connected_components(G, within=rest):
        xn = {v: [w for w in G.adj[v] if w in Xs] for v in comp}
        if len(comp) == 1:
            center = comp[0]
        elif len(comp) == 2:
            # For K2 the endpoint with more X-neighbors acts as the center.
            a, b = comp
            center = a if len(xn[a]) >= len(xn[b]) else b
        else:
            center = max(comp, key=lambda v: sum(1 for w in G.adj[v] if w not in Xs))
        leaves = tuple(v for v in comp if v != center)
        if any(len(xn[v]) >= 2 for v in comp):
            out.append(StarInfo(center, leaves, "boring"))
            continue
        kinds = {}
        for v in leaves:
            if not xn[v]:
                continue
            u = xn[v][0]
            twin = any(x != v and xn[x] == [u] for x in leaves)
            kinds[v] = ("type2" if twin else "type1", u)
        if xn[center]:
            out.append(StarInfo(center, leaves, "one_interesting", kinds, xn[center][0]))
        else:
            out.append(StarInfo(center, leaves, "zero_interesting", kinds))
    return out


def classify_stars(G: Graph, X: Iterable[int], threshold: int = RULE3_THRESHOLD) -> KernelResult:
    """Tame, classify and prune the stars of G - X.

    Runs the rules to a fixpoint, so every remaining star is well-behaved and
    0-interesting stars are gone. The result lists boring and 1-interesting
    stars in reduced ids, or carries a rejection witness.
    """
    X = sorted(set(X))
    if any(not 0 <= x < G.n for x in X):
        raise ValueError("modulator vertex out of range")
    if not is_star_forest(G.delete_vertices(X)[0]):
        raise ValueError("G - X is not a star forest")
    res = reduce_graph(G, X, threshold)
    if not res.rejected:
        res.stars = classify(res.graph, res.X)
        assert all(s.kind != "zero_interesting" for s in res.stars)
    return res


# --- kernels ------------------------------------------------------------------


def greedy_vertex_cover(G: Graph) -> list[int]:
    """Both endpoints of a maximal matching: a cover at most twice the minimum."""
    used: set[int] = set()
    for u, v in G.edges:
        if u not in used and v not in used:
            used.update((u, v))
    return sorted(used)


def kernelize(G: Graph, param: str = "nd", witness: Optional[Iterable[int]] = None,
              threshold: int = RULE3_THRESHOLD, c: Optional[int] = None) -> KernelResult:
    """Rules 1-3 to a fixpoint.

    nd mode guarantees at most 2*nd(G) vertices; vc mode at most k^2 for the
    given cover of size k (a greedy cover is used when none is given).
    """
    if param not in ("nd", "vc"):
        raise ValueError(f"unknown parameter {param!r}")
    cover = None
    if param == "vc":
        cover = greedy_vertex_cover(G) if witness is None else sorted(set(witness))
        if not is_vertex_cover(G, cover):
            raise ValueError("the given set is not a vertex cover")
    red = _Reducer(G, cover, threshold, c)
    red.run(["2", "3"])
    res = red.result()
    if res.rejected:
        return res
    H = res.graph
    for comp in connected_components(H):
        sub, _, _ = H.induced(comp)
        if param == "nd":
            p = neighborhood_diversity(sub)
        else:
            p = len(set(comp) & set(res.X or ()))
        res.components.append(([res.vmap[v] for v in comp], p))
    if param == "nd":
        assert H.n <= 2 * neighborhood_diversity(G)
    else:
        assert H.n <= len(cover) ** 2
    return res


# --- lifting ------------------------------------------------------------------


def lift_labeling(G: Graph, res: KernelResult, labels: Sequence[int]) -> EdgeLabeling:
    """Extend a good labeling of res.graph to a good labeling of G by undoing the trace."""
    if res.rejected:
        raise ValueError("cannot lift through a rejection")
    H, vmap = res.graph, res.vmap
    lab: dict[Pair, int] = {}
    for e, (a, b) in enumerate(H.edges):
        x, y = vmap[a], vmap[b]
        lab[(x, y) if x < y else (y, x)] = labels[e]
    for st in reversed(res.trace.steps):
        if st.rule == "3" and st.labels is not None:
            lab.update(zip(st.edges, st.labels))
        elif st.rule in ("2", "bridge"):
            for p in st.edges:
                lab[p] = 1
        elif st.rule == "4":
            _lift_star(lab, st.star)
    out = normalize([lab[p] for p in G.edges]) if G.m else EdgeLabeling()
    assert is_good_labeling(G, out).good
    return out


def _lift_star(lab: dict[Pair, int], star: StarInfo) -> None:
    # Fresh extremes below and above everything placed so far.
    lo = min(lab.values(), default=1) - 1
    hi = max(lab.values(), default=1) + 1

    def put(a, b, x):
        lab[(a, b) if a < b else (b, a)] = x

    s = star.center
    by_w: dict[int, list[int]] = {}
    for v, (t, w) in star.leaf_kinds.items():
        by_w.setdefault(w, []).append(v)
    for w, vs in by_w.items():
        if len(vs) == 1:
            put(s, vs[0], hi)
            put(vs[0], w, lo)
        else:
            v1, v2 = vs
            put(s, v1, hi)
            put(v2, w, hi)
            put(s, v2, lo)
            put(v1, w, lo)
    for v in star.leaves:
        if v not in star.leaf_kinds:
            put(s, v, hi)
