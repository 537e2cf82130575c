"""GEL solver parameterized by a star-forest modulator X.

After the reduction rules every component of G - X is a well-behaved star that
is either boring or 1-interesting. Let B be the vertices of boring stars. The
core G[X + B] has few edges, so every linear order rho of its edges is tried.
Each 1-interesting star with center s and X-neighbor z contributes its edge
sz (the set F) and its leaf edges (the set L). Edges of L go to the very
bottom (L_small) or very top (L_big) of the labeling. The edges of F are
inserted into rho as decided by a 2-SAT formula over variables x[a, b]
(a < b positions in the canonical order of E - L), where x[a, b] true means
e_a is above e_b.

Constraints, for center edge e_i of a star and a monotone core path ending
at z with last edge e_j (increasing) or e_l (decreasing):
  type-2 pair sharing w:  e_i < e_j and e_i > e_l (for the paths from w)
  type-1 leaf v with u:   e_i < e_j or e_i > e_l   (for the paths from u)
plus transitivity clauses that keep every F edge inside one gap of rho.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .brute import SearchBudget, _Counter
from .graph import Graph, is_star_forest
from .kernel import KernelResult, StarInfo, classify_stars, lift_labeling
from .labeling import (EQUAL, GREATER, SMALLER, EdgeLabeling, Relation, is_good_fast,
                       is_good_labeling, monotone_path)
from .twosat import Literal, TwoSatFormula, two_sat_solve


@dataclass
class SfmContext:
    G: Graph                      # reduced graph
    X: list[int]
    B: list[int]
    core: list[int]               # edge ids of G[X + B]
    L: list[int]
    F: list[int]
    order: list[int]              # E - L in edge-id order: e_1..e_m
    stars: list[StarInfo]         # 1-interesting stars only
    reduction: KernelResult
    pos: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.pos = {e: i for i, e in enumerate(self.order)}

    def var(self, a: int, b: int) -> int:
        """Variable index of x[a, b] for positions a < b."""
        m = len(self.order)
        return a * m - a * (a + 1) // 2 + (b - a - 1)

    def below(self, e: int, f: int) -> Literal:
        """The literal 'edge e has a smaller label than edge f'."""
        a, b = self.pos[e], self.pos[f]
        if a < b:
            return (self.var(a, b), False)
        return (self.var(b, a), True)


def build_context(G: Graph, X) -> Optional[SfmContext]:
    """Reduce and classify; None if a rule proves G bad."""
    red = classify_stars(G, X)
    if red.rejected:
        return None
    H = red.graph
    Xr = list(red.X or [])
    B = sorted(v for st in red.stars if st.kind == "boring" for v in (st.center, *st.leaves))
    ones = [st for st in red.stars if st.kind == "one_interesting"]
    inside = set(Xr) | set(B)
    core = [e for e, (a, b) in enumerate(H.edges) if a in inside and b in inside]
    L, F = [], []
    for st in ones:
        F.append(H.edge_id(st.center, st.center_x_neighbor))
        for v, (_, u) in st.leaf_kinds.items():
            L.extend((H.edge_id(st.center, v), H.edge_id(v, u)))
    Ls = set(L)
    order = [e for e in range(H.m) if e not in Ls]
    ctx = SfmContext(H, Xr, B, core, sorted(L), sorted(F), order, ones, red)
    assert sorted(core + L + F) == list(range(H.m))
    return ctx


def enumerate_good_orders(ctx: SfmContext, budget: Optional[SearchBudget] = None) -> Iterator[tuple[int, ...]]:
    """Orders of the core edges (lowest first) whose injective labeling is good on the core.

    Prefixes are pruned as soon as they are bad; lexicographic in edge ids.
    """
    counter = _Counter(budget or SearchBudget())
    G, core = ctx.G, ctx.core
    labels = [0] * G.m
    placed: list[int] = []
    remaining = sorted(core)

    def rec() -> Iterator[tuple[int, ...]]:
        if not remaining:
            yield tuple(placed)
            return
        for e in list(remaining):
            counter.tick()
            labels[e] = len(placed) + 1
            placed.append(e)
            if is_good_fast(G, labels, placed):
                remaining.remove(e)
                yield from rec()
                remaining.append(e)
                remaining.sort()
            placed.pop()
            labels[e] = 0

    yield from rec()


def _core_paths(ctx: SfmContext, rho: tuple[int, ...]):
    labels = [0] * ctx.G.m
    for r, e in enumerate(rho):
        labels[e] = r + 1
    inside = set(ctx.X) | set(ctx.B)

    def last_edge(u: int, z: int, increasing: bool) -> Optional[int]:
        p = monotone_path(ctx.G, labels, u, z, increasing, restrict=inside)
        if p is None or len(p) < 2:
            return None
        return ctx.G.edge_id(p[-2], p[-1])

    return last_edge


def _constraints(ctx: SfmContext, rho: tuple[int, ...]):
    """Per star: (center edge, [(j, l) per type-2 pair], [(v, u, j, l) per type-1 leaf])."""
    last_edge = _core_paths(ctx, rho)
    out = []
    for st in ctx.stars:
        s, z = st.center, st.center_x_neighbor
        ei = ctx.G.edge_id(s, z)
        pairs = [(last_edge(w, z, True), last_edge(w, z, False)) for _, _, w in st.type2_pairs()]
        ones = [(v, u, last_edge(u, z, True), last_edge(u, z, False)) for v, u in st.type1_leaves()]
        out.append((ei, pairs, ones))
    return out


def _neg(lit: Literal) -> Literal:
    return (lit[0], not lit[1])


def build_phi(ctx: SfmContext, rho: tuple[int, ...], chain: bool = True) -> TwoSatFormula:
    """The 2-SAT formula for one guessed core order rho.

    With chain=True every F edge also gets the clauses 'below rho[t] implies
    below rho[t+1]', which force it into a single gap of rho.
    """
    m = len(ctx.order)
    phi = TwoSatFormula(m * (m - 1) // 2)
    below = ctx.below
    for a, b in combinations(range(len(rho)), 2):
        phi.add(below(rho[a], rho[b]))
    rank = {e: r for r, e in enumerate(rho)}
    for ei, pairs, ones in _constraints(ctx, rho):
        for j, l in pairs:
            if j is not None:
                phi.add(below(ei, j))
            if l is not None:
                phi.add(below(l, ei))
        for _, _, j, l in ones:
            if j is None or l is None:
                continue
            phi.add(below(ei, j), below(l, ei))
            if j != l:
                lo, hi = (j, l) if rank[j] < rank[l] else (l, j)
                phi.add(_neg(below(ei, lo)), below(ei, hi))
        if chain:
            for t in range(len(rho) - 1):
                phi.add(_neg(below(ei, rho[t])), below(ei, rho[t + 1]))
    return phi


def _value(ctx: SfmContext, assignment: list[bool], e: int, f: int) -> bool:
    v, pol = ctx.below(e, f)
    return assignment[v] == pol


def _total_order(ctx: SfmContext, rho: tuple[int, ...], assignment: list[bool]) -> list[int]:
    """E - L from lowest to highest: rho with each F edge placed in its gap."""
    keys = {e: (r, 1, 0) for r, e in enumerate(rho)}
    for f in ctx.F:
        ups = [_value(ctx, assignment, f, e) for e in rho]
        gap = sum(1 for u in ups if not u)
        if ups != [False] * gap + [True] * (len(rho) - gap):
            raise ValueError("assignment does not place the F edge in a single gap")
        keys[f] = (gap, 0, ctx.pos[f])
    return sorted(ctx.order, key=keys.__getitem__)


def _split_L(ctx: SfmContext, rho: tuple[int, ...], rank: dict[int, int]):
    small: list[int] = []
    big: list[int] = []
    G = ctx.G
    for (ei, pairs, ones), st in zip(_constraints(ctx, rho), ctx.stars):
        s = st.center
        for v1, v2, w in st.type2_pairs():
            small += [G.edge_id(s, v1), G.edge_id(w, v2)]
            big += [G.edge_id(s, v2), G.edge_id(w, v1)]
        for v, u, j, l in ones:
            # sv at the bottom makes s-v-u rise from s, which clashes only with the
            # decreasing path into z; sv at the top clashes only with the increasing one.
            small_ok = l is None or rank[ei] > rank[l]
            big_ok = j is None or rank[ei] < rank[j]
            sv, vu = G.edge_id(s, v), G.edge_id(v, u)
            if small_ok:
                small.append(sv)
                big.append(vu)
            elif big_ok:
                big.append(sv)
                small.append(vu)
            else:
                raise ValueError("assignment violates a type-1 clause")
    return sorted(small), sorted(big)


def _labels(ctx: SfmContext, rho, assignment) -> tuple[list[int], list[int], list[int]]:
    seq = _total_order(ctx, rho, assignment)
    rank = {e: r for r, e in enumerate(seq)}
    small, big = _split_L(ctx, rho, rank)
    labels = [0] * ctx.G.m
    for e, r in rank.items():
        labels[e] = r + 1
    for e in big:
        labels[e] = len(seq) + 1
    return labels, small, big


def extract_relation(ctx: SfmContext, rho: tuple[int, ...], assignment: list[bool]
                     ) -> tuple[Relation, list[int], list[int]]:
    """(standard relation, L_small, L_big) from a satisfying assignment of build_phi."""
    labels, small, big = _labels(ctx, rho, assignment)
    m = ctx.G.m
    rel = tuple(tuple(EQUAL if labels[e] == labels[f] else (GREATER if labels[e] > labels[f] else SMALLER)
                      for f in range(m)) for e in range(m))
    return rel, small, big


def solve_sfm(G: Graph, X, budget: Optional[SearchBudget] = None,
              stats: Optional[dict] = None) -> Optional[EdgeLabeling]:
    """A good labeling of G, or None if G is bad.

    X must be a star-forest modulator. Raises BudgetExhausted when the order
    enumeration hits the budget.
    """
    X = sorted(set(X))
    if any(not 0 <= x < G.n for x in X):
        raise ValueError("modulator vertex out of range")
    if not is_star_forest(G.delete_vertices(X)[0]):
        raise ValueError("G - X is not a star forest")
    ctx = build_context(G, X)
    if stats is not None:
        stats.update(orders=0, rank=None)
    if ctx is None:
        return None
    if stats is not None:
        stats.update(core=len(ctx.core), F=len(ctx.F), L=len(ctx.L), reduced_n=ctx.G.n)
    for idx, rho in enumerate(enumerate_good_orders(ctx, budget)):
        if stats is not None:
            stats["orders"] = idx + 1
        phi = build_phi(ctx, rho)
        assignment = two_sat_solve(phi)
        if assignment is None:
            continue
        labels, _, _ = _labels(ctx, rho, assignment)
        if not is_good_labeling(ctx.G, labels).good:
            raise AssertionError("extracted relation is not good")
        if stats is not None:
            stats["rank"] = idx
            stats["rho"] = list(rho)
        return lift_labeling(G, ctx.reduction, labels)
    return None
