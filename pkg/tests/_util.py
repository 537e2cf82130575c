"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random

from gelab.graph import Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)


def random_graph_m(rng: random.Random, n: int, m: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph(n, sorted(rng.sample(pairs, min(m, len(pairs)))))


def mixed_graphs(rng: random.Random, count: int, nmin: int, nmax: int):
    """Random sparse graphs; every other one avoids K3 and K2,3 so the solvers cannot stop early."""
    from gelab.graph import find_K3_or_K23

    made = 0
    while made < count:
        n = rng.randint(nmin, nmax)
        G = random_graph_m(rng, n, rng.randint(n - 1, min(2 * n, n * (n - 1) // 2)))
        if made % 2 == 0 and find_K3_or_K23(G) is not None:
            continue
        made += 1
        yield G


def graphs_up_to_iso(n: int) -> list[Graph]:
    """Graphs on exactly n vertices with no isolated vertex, one per isomorphism class."""
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen, out = set(), []
    for mask in range(1 << len(pairs)):
        E = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if len({v for e in E for v in e}) < n:
            continue
        key = min(tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in E)) for p in perms)
        if key not in seen:
            seen.add(key)
            out.append(Graph(n, list(key)))
    return out


def weak_orders(m: int, max_labels: int | None = None):
    """Labelings using exactly the labels 1..c for some c; every labeling is equivalent to one."""
    k = m if max_labels is None else min(m, max_labels)
    for lab in itertools.product(range(1, k + 1), repeat=m):
        if set(lab) == set(range(1, len(set(lab)) + 1)):
            yield lab


def upp_by_enumeration(D) -> bool:
    """True iff no ordered pair has two distinct simple directed paths."""
    for s in range(D.n):
        hits = [0] * D.n
        stack = [(s, 1 << s)]
        while stack:
            x, seen = stack.pop()
            for y in D.out[x]:
                if seen >> y & 1:
                    continue
                hits[y] += 1
                if hits[y] > 1:
                    return False
                stack.append((y, seen | 1 << y))
    return True


def star_modulator_instance(rng: random.Random, max_core: int = 6, max_n: int = 14):
    """G and X such that G - X is a star forest built from boring and 1-interesting stars."""
    from gelab.graph import find_K3_or_K23

    while True:
        k = rng.randint(1, 3)
        n = k
        X = list(range(k))
        E = {(a, b) for a, b in itertools.combinations(X, 2) if rng.random() < 0.5}
        boring = []
        for _ in range(rng.randint(0, 2)):
            c = n
            n += 1
            vs = [c]
            for _ in range(rng.randint(0, 2)):
                E.add((c, n))
                vs.append(n)
                n += 1
            for v in vs:
                for x in rng.sample(X, rng.randint(0, min(2, k))):
                    E.add((x, v))
            boring += vs
        for _ in range(rng.randint(1, 3)):
            c = n
            n += 1
            E.add((rng.choice(X), c))
            for _ in range(rng.randint(1, 3)):
                E.add((c, n))
                E.add((rng.choice(X), n))
                n += 1
            if rng.random() < 0.3:
                E.add((rng.choice(X), rng.randrange(k, n)))
        G = Graph(n, sorted((min(e), max(e)) for e in E))
        inside = set(X) | set(boring)
        core = sum(1 for a, b in G.edges if a in inside and b in inside)
        # most graphs with a K3 or K2,3 are trivially bad; keep a few
        if find_K3_or_K23(G) is not None and rng.random() < 0.9:
            continue
        if core <= max_core and n <= max_n:
            return G, X


def cover_instance(rng: random.Random, k: int, extra: int):
    """Graph with a known vertex cover of size k: every edge touches {0..k-1}."""
    n = k + extra
    E = set()
    for a in range(k):
        for b in range(a + 1, n):
            if rng.random() < 0.35:
                E.add((a, b))
    return Graph(n, sorted(E)), list(range(k))
