"""Simple undirected graphs with canonical edge indexing, digraphs, and file I/O.

Vertices are 0..n-1. Edges are stored as pairs (u, v) with u < v, sorted
lexicographically; the edge id is the position in that sorted list.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional, Sequence


class GraphFormatError(ValueError):
    """Malformed graph/digraph/labeling text. Carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    __slots__ = ("n", "edges", "adj", "_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("negative vertex count")
        pairs = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in pairs:
                raise ValueError(f"duplicate edge {key}")
            pairs.add(key)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(pairs))
        self._index = {e: i for i, e in enumerate(self.edges)}
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        """Id of edge uv; KeyError if absent."""
        return self._index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def incident(self, v: int) -> list[int]:
        """Edge ids incident to v, ordered by neighbor."""
        return [self.edge_id(v, w) for w in self.adj[v]]

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if a == v else a

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # --- derived graphs -------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int], list[int]]:
        """Induced subgraph on `vertices`.

        Returns (H, vmap, emap) where vmap[new] = old vertex and emap[new] = old edge id.
        """
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        new_edges = []
        for u, v in self.edges:
            if u in pos and v in pos:
                new_edges.append((pos[u], pos[v]))
        H = Graph(len(keep), new_edges)
        emap = [self.edge_id(keep[a], keep[b]) for a, b in H.edges]
        return H, keep, emap

    def delete_vertices(self, vertices: Iterable[int]) -> tuple["Graph", list[int], list[int]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def delete_edges(self, eids: Iterable[int]) -> tuple["Graph", list[int], list[int]]:
        """Spanning subgraph without the given edges; vertex map is the identity."""
        drop = set(eids)
        kept = [i for i in range(self.m) if i not in drop]
        H = Graph(self.n, [self.edges[i] for i in kept])
        # Sorted order is preserved, so the kept ids line up with H's ids.
        return H, list(range(self.n)), kept

    def edge_subgraph(self, eids: Iterable[int]) -> tuple["Graph", list[int]]:
        """Spanning subgraph with only the given edges; returns (H, emap)."""
        kept = sorted(set(eids))
        return Graph(self.n, [self.edges[i] for i in kept]), kept


class Digraph:
    __slots__ = ("n", "arcs", "out", "inn")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        seen = set()
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u}, {v})")
            if (v, u) in seen:
                raise ValueError(f"arcs ({u}, {v}) and ({v}, {u}) both present")
            seen.add((u, v))
        self.n = n
        self.arcs: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.arcs:
            out[u].append(v)
            inn[v].append(u)
        self.out = tuple(tuple(a) for a in out)
        self.inn = tuple(tuple(a) for a in inn)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"

    def underlying(self) -> Graph:
        return Graph(self.n, self.arcs)


def orient(G: Graph, bits: int) -> Digraph:
    """Orientation of G: bit i set means edge i points from larger to smaller endpoint."""
    arcs = []
    for i, (u, v) in enumerate(G.edges):
        arcs.append((v, u) if (bits >> i) & 1 else (u, v))
    return Digraph(G.n, arcs)


# --- file formats ---------------------------------------------------------


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(f"not an integer: {tok!r}", lineno) from None


def _parse_pairs(text: str, kind: str, allow_labels: bool):
    n = m = None
    pairs: list[tuple[int, int, int]] = []  # (u, v, lineno)
    labels: list[int] = []
    labeled = None
    for lineno, toks in _content_lines(text):
        if toks[0] == "p":
            if n is not None:
                raise GraphFormatError("second header line", lineno)
            if len(toks) != 4 or toks[1] != kind:
                raise GraphFormatError(f"malformed header, expected 'p {kind} <n> <m>'", lineno)
            n, m = _parse_int(toks[2], lineno), _parse_int(toks[3], lineno)
            if n < 0 or m < 0:
                raise GraphFormatError("negative count in header", lineno)
            continue
        if n is None:
            raise GraphFormatError("edge line before header", lineno)
        if len(toks) not in ((2, 3) if allow_labels else (2,)):
            raise GraphFormatError("malformed edge line", lineno)
        this_labeled = len(toks) == 3
        if labeled is None:
            labeled = this_labeled
        elif labeled != this_labeled:
            raise GraphFormatError("mixed labeled and unlabeled edge lines", lineno)
        u, v = _parse_int(toks[0], lineno), _parse_int(toks[1], lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex id out of range 1..{n}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        pairs.append((u - 1, v - 1, lineno))
        if this_labeled:
            lab = _parse_int(toks[2], lineno)
            if lab < 0:
                raise GraphFormatError("negative label", lineno)
            labels.append(lab)
    if n is None:
        raise GraphFormatError("missing header line")
    if len(pairs) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(pairs)}")
    return n, pairs, labels if labeled else None


def parse_graph(text: str) -> tuple[Graph, Optional[list[int]]]:
    """Parse the `p gel n m` format. Returns (G, labels-by-edge-id or None)."""
    n, pairs, labels = _parse_pairs(text, "gel", True)
    seen: dict[tuple[int, int], int] = {}
    for u, v, lineno in pairs:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u + 1} {v + 1} (first at line {seen[key]})", lineno)
        seen[key] = lineno
    G = Graph(n, [(u, v) for u, v, _ in pairs])
    if labels is None:
        return G, None
    by_id = [0] * G.m
    for (u, v, _), lab in zip(pairs, labels):
        by_id[G.edge_id(u, v)] = lab
    return G, by_id


def format_graph(G: Graph, labels: Optional[Sequence[int]] = None, comment: str = "") -> str:
    out = [f"c {line}" for line in comment.splitlines()]
    out.append(f"p gel {G.n} {G.m}")
    for i, (u, v) in enumerate(G.edges):
        if labels is None:
            out.append(f"{u + 1} {v + 1}")
        else:
            out.append(f"{u + 1} {v + 1} {labels[i]}")
    return "\n".join(out) + "\n"


def parse_labeling(G: Graph, text: str) -> list[int]:
    """Parse 'u v label' lines covering every edge of G exactly once."""
    labels: list[Optional[int]] = [None] * G.m
    for lineno, toks in _content_lines(text):
        if len(toks) != 3:
            raise GraphFormatError("expected 'u v label'", lineno)
        u, v, lab = (_parse_int(t, lineno) for t in toks)
        in_range = 1 <= u <= G.n and 1 <= v <= G.n
        if not in_range or u == v or not G.has_edge(u - 1, v - 1):
            raise GraphFormatError(f"{u} {v} is not an edge of the graph", lineno)
        if lab < 0:
            raise GraphFormatError("negative label", lineno)
        eid = G.edge_id(u - 1, v - 1)
        if labels[eid] is not None:
            raise GraphFormatError(f"edge {u} {v} labeled twice", lineno)
        labels[eid] = lab
    missing = [i for i, lab in enumerate(labels) if lab is None]
    if missing:
        u, v = G.edges[missing[0]]
        raise GraphFormatError(f"edge {u + 1} {v + 1} has no label")
    return labels  # type: ignore[return-value]


def format_labeling(G: Graph, labels: Sequence[int]) -> str:
    return "".join(f"{u + 1} {v + 1} {labels[i]}\n" for i, (u, v) in enumerate(G.edges))


def parse_digraph(text: str) -> Digraph:
    n, pairs, _ = _parse_pairs(text, "upp", False)
    seen: dict[tuple[int, int], int] = {}
    for u, v, lineno in pairs:
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate arc {u + 1} {v + 1}", lineno)
        if (v, u) in seen:
            raise GraphFormatError(f"arc {u + 1} {v + 1} reverses line {seen[(v, u)]}", lineno)
        seen[(u, v)] = lineno
    return Digraph(n, [(u, v) for u, v, _ in pairs])


def format_digraph(D: Digraph) -> str:
    return f"p upp {D.n} {D.m}\n" + "".join(f"{u + 1} {v + 1}\n" for u, v in D.arcs)


def parse_vertex_set(text: str, n: int) -> list[int]:
    """One or more lines of 1-indexed vertex ids (comment lines allowed)."""
    out = set()
    for lineno, toks in _content_lines(text):
        for t in toks:
            v = _parse_int(t, lineno)
            if not 1 <= v <= n:
                raise GraphFormatError(f"vertex id {v} out of range 1..{n}", lineno)
            out.add(v - 1)
    return sorted(out)


# --- structure ------------------------------------------------------------


def connected_components(G: Graph, within: Optional[Iterable[int]] = None) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    allowed = set(range(G.n)) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        stack, comp = [s], [s]
        while stack:
            x = stack.pop()
            for y in G.adj[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    stack.append(y)
                    comp.append(y)
        comps.append(sorted(comp))
    return comps


def is_forest(G: Graph) -> bool:
    return G.m == G.n - len(connected_components(G))


def cut_vertices(G: Graph) -> list[int]:
    """Articulation points via iterative lowpoint DFS."""
    disc = [-1] * G.n
    low = [0] * G.n
    cuts = set()
    t = 0
    for root in range(G.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(G.adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(G.adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
        if root_children >= 2:
            cuts.add(root)
    return sorted(cuts)


def bridges(G: Graph) -> list[int]:
    """Edge ids of all bridges."""
    disc = [-1] * G.n
    low = [0] * G.n
    out = []
    t = 0
    for root in range(G.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(G.incident(root)))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for e in it:
                if e == pe:
                    continue
                w = G.other(e, v)
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(G.incident(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if pe != -1:
                p = G.other(pe, v)
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    out.append(pe)
    return sorted(out)


def find_K3_or_K23(G: Graph) -> Optional[tuple[str, list[int]]]:
    """A triangle ("K3", [a, b, c]) or ("K23", [a, b, x, y, z]) subgraph, or None."""
    nbr = [set(a) for a in G.adj]
    for u, v in G.edges:
        common = nbr[u] & nbr[v]
        if common:
            return "K3", [u, v, min(common)]
    for a in range(G.n):
        if len(nbr[a]) < 3:
            continue
        for b in range(a + 1, G.n):
            common = nbr[a] & nbr[b]
            if len(common) >= 3:
                return "K23", [a, b] + sorted(common)[:3]
    return None


def is_star_forest(G: Graph) -> bool:
    """Every component is K1, K2 or K1,r: no triangle and no P4 subgraph."""
    for u, v in G.edges:
        # An edge with both endpoints of degree >= 2 is the middle of a P4 or in a triangle.
        if len(G.adj[u]) >= 2 and len(G.adj[v]) >= 2:
            return False
    return True


def find_star_forest_obstruction(G: Graph, removed: set[int]) -> Optional[list[int]]:
    """Vertices of a P4 or triangle in G - removed, or None if G - removed is a star forest."""
    def deg(x):
        return sum(1 for y in G.adj[x] if y not in removed)

    for u, v in G.edges:
        if u in removed or v in removed:
            continue
        if deg(u) >= 2 and deg(v) >= 2:
            a = next(x for x in G.adj[u] if x != v and x not in removed)
            b = next((x for x in G.adj[v] if x != u and x != a and x not in removed), None)
            if b is None:
                # v's only other neighbor is a: triangle u, v, a.
                return [a, u, v]
            return [a, u, v, b]
    return None


def find_star_forest_modulator(G: Graph, k: int) -> Optional[list[int]]:
    """Smallest-first search for X with |X| <= k and G - X a star forest.

    Branches on the vertices of a P4 or triangle. Complete, so None means none exists.
    """
    if k < 0:
        raise ValueError("k must be non-negative")

    def search(removed: set[int], budget: int) -> Optional[set[int]]:
        obs = find_star_forest_obstruction(G, removed)
        if obs is None:
            return removed
        if budget == 0:
            return None
        for x in obs:
            found = search(removed | {x}, budget - 1)
            if found is not None:
                return found
        return None

    for size in range(k + 1):
        found = search(set(), size)
        if found is not None:
            return sorted(found)
    return None


def type_partition(G: Graph) -> list[list[int]]:
    """Classes of the relation N(u)-{v} = N(v)-{u}, ordered by smallest member."""
    nbr = [frozenset(a) for a in G.adj]
    classes: list[list[int]] = []
    for v in range(G.n):
        for cls in classes:
            u = cls[0]
            if nbr[u] - {v} == nbr[v] - {u}:
                cls.append(v)
                break
        else:
            classes.append([v])
    return classes


def neighborhood_diversity(G: Graph) -> int:
    return len(type_partition(G))


def is_vertex_cover(G: Graph, X: Iterable[int]) -> bool:
    S = set(X)
    return all(u in S or v in S for u, v in G.edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for H in graphs:
        edges.extend((u + off, v + off) for u, v in H.edges)
        off += H.n
    return Graph(off, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(r: int) -> Graph:
    return Graph(r + 1, [(0, i) for i in range(1, r + 1)])
