"""Exhaustive exact solvers used as ground truth.

brute_c_gel assigns labels 1..c to edges in canonical order and prunes any
prefix whose labeled subgraph is already bad (goodness is inherited by
subgraphs, so this never cuts off a solution).

brute_gel searches edge rankings level by level: level k holds the edge of
rank k. The state after placing a set S of edges is S plus, for every vertex
x, the set R[x] of vertices reachable from x by an increasing path over S.
An edge may take the next rank iff its component meets every R[x] at most
once, which is the verifier's tree-growing test. Failed (S, R) states are
memoized.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .graph import Graph, Digraph, find_K3_or_K23, is_forest, orient
from .labeling import EdgeLabeling, is_good_fast, is_good_labeling


class BudgetExhausted(RuntimeError):
    """The search hit its node or time cap before finishing."""


@dataclass(frozen=True)
class SearchBudget:
    node_cap: int = 50_000_000
    time_cap: float = 3600.0

    def __post_init__(self):
        if self.node_cap <= 0 or self.time_cap <= 0:
            raise ValueError("budget caps must be positive")


class _Counter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.start = time.monotonic()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.node_cap:
            raise BudgetExhausted(f"node cap {self.budget.node_cap} reached")
        if self.nodes & 1023 == 0 and time.monotonic() - self.start > self.budget.time_cap:
            raise BudgetExhausted(f"time cap {self.budget.time_cap}s reached")


def _rank_search(G: Graph, counter: _Counter) -> Optional[list[int]]:
    n, m = G.n, G.m
    full = (1 << m) - 1
    ends = [(1 << u, 1 << v) for u, v in G.edges]
    failed: set[tuple] = set()
    labels = [0] * m

    def place(S: int, R: tuple, rank: int) -> bool:
        if S == full:
            return True
        key = (S, R)
        if key in failed:
            return False
        for e in range(m):
            if S >> e & 1:
                continue
            counter.tick()
            a, b = ends[e]
            ab = a | b
            if any(r & ab == ab for r in R):
                continue
            newR = tuple(r | ab if r & ab else r for r in R)
            labels[e] = rank
            if place(S | (1 << e), newR, rank + 1):
                return True
        failed.add(key)
        return False

    R0 = tuple(1 << x for x in range(n))
    return labels if place(0, R0, 1) else None


def _dfs_c(G: Graph, c: int, counter: _Counter) -> Optional[list[int]]:
    m = G.m
    labels = [0] * m
    # Reversing all labels (x -> c+1-x) maps gels to gels, so edge 0 may stay
    # in the lower half.
    tops = [(c + 1) // 2] + [c] * (m - 1)

    def rec(i: int) -> bool:
        if i == m:
            return True
        prefix = range(i + 1)
        for lab in range(1, tops[i] + 1):
            counter.tick()
            labels[i] = lab
            if is_good_fast(G, labels, prefix) and rec(i + 1):
                return True
        return False

    return labels if rec(0) else None


def brute_c_gel(G: Graph, c: int, budget: Optional[SearchBudget] = None,
                stats: Optional[dict] = None) -> Optional[EdgeLabeling]:
    """A good labeling with values in 1..c, or None if there is none.

    Raises BudgetExhausted if the cap is hit before the search completes.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    counter = _Counter(budget or SearchBudget())
    try:
        if G.m == 0:
            return EdgeLabeling()
        found = _dfs_c(G, c, counter)
    finally:
        if stats is not None:
            stats["nodes"] = counter.nodes
    if found is None:
        return None
    lab = EdgeLabeling(found)
    assert is_good_labeling(G, lab).good
    return lab


def brute_gel(G: Graph, budget: Optional[SearchBudget] = None,
              stats: Optional[dict] = None) -> Optional[EdgeLabeling]:
    """An injective good labeling (edge ranks 1..m), or None if G is bad."""
    counter = _Counter(budget or SearchBudget())
    try:
        if find_K3_or_K23(G) is not None:
            return None
        found = _rank_search(G, counter)
    finally:
        if stats is not None:
            stats["nodes"] = counter.nodes
    if found is None:
        return None
    lab = EdgeLabeling(found)
    assert is_good_labeling(G, lab).good
    return lab


def brute_min_gel(G: Graph, budget: Optional[SearchBudget] = None,
                  stats: Optional[dict] = None) -> Optional[tuple[int, EdgeLabeling]]:
    """(minimum c, a c-gel), or None if G admits no good labeling at all."""
    budget = budget or SearchBudget()
    total = 0

    def run(fn, *args):
        nonlocal total
        local: dict = {}
        try:
            return fn(*args, budget, local)
        finally:
            total += local.get("nodes", 0)
            if stats is not None:
                stats["nodes"] = total

    if is_forest(G):
        return 1, EdgeLabeling([1] * G.m)
    if run(brute_gel, G) is None:
        return None
    for c in range(2, G.m + 1):
        lab = run(brute_c_gel, G, c)
        if lab is not None:
            return c, lab
    raise AssertionError("a good graph always has an m-gel")


def iter_orientations(G: Graph):
    for bits in range(1 << G.m):
        yield orient(G, bits)


def brute_upp_orientations(G: Graph, budget: Optional[SearchBudget] = None,
                           limit: Optional[int] = None) -> tuple[int, list[Digraph]]:
    """Count all UPP orientations by full 2^m enumeration; keep up to `limit` of them."""
    from .upp import is_upp

    counter = _Counter(budget or SearchBudget())
    if (1 << G.m) > counter.budget.node_cap:
        raise BudgetExhausted(f"2^{G.m} orientations exceed the node cap")
    count = 0
    kept: list[Digraph] = []
    for D in iter_orientations(G):
        counter.tick()
        if is_upp(D).upp:
            count += 1
            if limit is None or len(kept) < limit:
                kept.append(D)
    return count, kept
