"""Gadget generators and hardness reductions.

Every generator returns a Graph plus a dict ("reduction map") naming the
distinguished edges and vertices. Edge roles are stored as vertex pairs and
as edge ids of the returned graph.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from .graph import Graph
from .labeling import EdgeLabeling
from .nae import NaeFormula


class _Builder:
    def __init__(self, n: int = 0):
        self.n = n
        self.edges: set[tuple[int, int]] = set()

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def vertices(self, k: int) -> list[int]:
        return [self.vertex() for _ in range(k)]

    def edge(self, u: int, v: int) -> tuple[int, int]:
        key = (min(u, v), max(u, v))
        if u == v or key in self.edges:
            raise ValueError(f"bad gadget edge {key}")
        self.edges.add(key)
        return key

    def ensure_edge(self, u: int, v: int) -> tuple[int, int]:
        key = (min(u, v), max(u, v))
        self.edges.add(key)
        return key

    def cycle(self, vs: list[int]) -> list[tuple[int, int]]:
        return [self.edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _eid(G: Graph, pair) -> int:
    return G.edge_id(*pair)


# --- labeling gadgets ---------------------------------------------------------


def _propagation_into(B: _Builder, u1: int, u2: int, v1: int, v2: int) -> list[int]:
    """Add two 2-paths u_i - w - v_i for each i; the bones u1u2, v1v2 must exist."""
    mids = []
    for a, b in ((u1, v1), (u2, v2)):
        for _ in range(2):
            w = B.vertex()
            B.edge(a, w)
            B.edge(w, b)
            mids.append(w)
    return mids


def gen_propagation() -> tuple[Graph, dict]:
    """Bones u1u2 and v1v2 plus two internally disjoint 2-paths u_i-w-v_i for i = 1, 2."""
    B = _Builder(4)
    u1, u2, v1, v2 = 0, 1, 2, 3
    b1, b2 = B.edge(u1, u2), B.edge(v1, v2)
    _propagation_into(B, u1, u2, v1, v2)
    G = B.graph()
    return G, {"bones": [_eid(G, b1), _eid(G, b2)], "u": [u1, u2], "v": [v1, v2]}


def _extremal_into(B: _Builder, u1: int, u2: int) -> int:
    """Hub a with two 2-paths to each bone endpoint; returns the hub."""
    a = B.vertex()
    for u in (u1, u2):
        for _ in range(2):
            x = B.vertex()
            B.edge(a, x)
            B.edge(x, u)
    return a


def gen_extremal() -> tuple[Graph, dict]:
    """Hub a of degree 4, bone u1u2, two 2-paths from a to each u_i."""
    B = _Builder(0)
    u1, u2 = B.vertices(2)
    bone = B.edge(u1, u2)
    hub = _extremal_into(B, u1, u2)
    G = B.graph()
    return G, {"bone": _eid(G, bone), "hub": hub, "u": [u1, u2]}


def _color_into(B: _Builder, c: int, v: Optional[int] = None) -> tuple[int, list[int]]:
    if v is None:
        v = B.vertex()
    vs = B.vertices(c)
    for x in vs:
        B.edge(v, x)
    for i, j in combinations(range(c), 2):
        w = B.vertex()
        B.edge(vs[i], w)
        B.edge(vs[j], w)
    return v, vs


def gen_color(c: int) -> tuple[Graph, dict]:
    """D_c: center v, spokes v v_i, and a 2-path v_i - v_ij - v_j for every i < j."""
    if c < 1:
        raise ValueError("c must be at least 1")
    B = _Builder(0)
    v, vs = _color_into(B, c)
    G = B.graph()
    return G, {"center": v, "spokes": [G.edge_id(v, x) for x in vs], "v": vs}


def gen_hypercube_with_gel(c: int) -> tuple[Graph, EdgeLabeling]:
    """H_c with every edge in direction i labeled i."""
    if c < 1:
        raise ValueError("c must be at least 1")
    edges = []
    for x in range(1 << c):
        for i in range(c):
            y = x ^ (1 << i)
            if x < y:
                edges.append((x, y))
    G = Graph(1 << c, edges)
    labels = [(u ^ v).bit_length() for u, v in G.edges]
    return G, EdgeLabeling(labels)


def _forced_into(B: _Builder, c: int, v: int, v1: int) -> list[int]:
    """F_c on an existing edge v v1 (its bone). Returns the spoke endpoints v_1..v_{c-1}."""
    vs = [v1] + B.vertices(c - 2)
    for x in vs[1:]:
        B.edge(v, x)
    for i, j in combinations(range(c - 1), 2):
        w = B.vertex()
        B.edge(vs[i], w)
        B.edge(vs[j], w)
    for x in vs[1:]:
        _extremal_into(B, v, x)
    return vs


def gen_forced(c: int) -> tuple[Graph, dict]:
    """D_{c-1} with an extremal gadget on each spoke v v_i, i >= 2; bone v v_1."""
    if c < 3:
        raise ValueError("c must be at least 3")
    B = _Builder(0)
    v, v1 = B.vertices(2)
    bone = B.edge(v, v1)
    vs = _forced_into(B, c, v, v1)
    G = B.graph()
    return G, {"bone": _eid(G, bone), "center": v, "spokes": [G.edge_id(v, x) for x in vs]}


def gen_knplus(n: int) -> Graph:
    """K_n with every edge uv replaced by a C4 u u' v v'."""
    if n < 2:
        raise ValueError("n must be at least 2")
    B = _Builder(n)
    for u, v in combinations(range(n), 2):
        a, b = B.vertices(2)
        B.edge(u, a)
        B.edge(a, v)
        B.edge(v, b)
        B.edge(b, u)
    return B.graph()


# --- reductions -------------------------------------------------------------------


def _check_distinct(phi: NaeFormula) -> None:
    for j, cl in enumerate(phi.clauses):
        if len({abs(x) for x in cl}) < 3:
            raise ValueError(f"clause {j + 1} repeats a variable")


def reduce_nae_to_2gel(phi: NaeFormula) -> tuple[Graph, dict]:
    """Variable 4-cycles, clause 5-cycles, one propagation gadget per literal occurrence.

    Each clause must use three distinct variables.
    """
    _check_distinct(phi)
    B = _Builder(0)
    var_edges = []
    for _ in range(phi.nvars):
        p = B.vertices(4)
        ring = B.cycle(p)
        var_edges.append(((p[0], p[1]), (p[1], p[2]), ring))
    clause_edges = []
    for _ in phi.clauses:
        q = B.vertices(5)
        ring = B.cycle(q)
        clause_edges.append(([(q[a], q[a + 1]) for a in range(3)], ring))
    links = []
    for j, cl in enumerate(phi.clauses):
        for a, lit in enumerate(cl):
            pos, neg, _ = var_edges[abs(lit) - 1]
            u1, u2 = pos if lit > 0 else neg
            v1, v2 = clause_edges[j][0][a]
            _propagation_into(B, u1, u2, v1, v2)
            links.append({"clause": j, "position": a, "literal": lit})
    G = B.graph()

    def ids(pair):
        return G.edge_id(*pair)

    rmap = {
        "e": [ids(pos) for pos, _, _ in var_edges],
        "ebar": [ids(neg) for _, neg, _ in var_edges],
        "variable_cycles": [[ids(x) for x in ring] for _, _, ring in var_edges],
        "f": [[ids(x) for x in fs] for fs, _ in clause_edges],
        "clause_cycles": [[ids(x) for x in ring] for _, ring in clause_edges],
        "propagation": links,
    }
    for link in rmap["propagation"]:
        j, a, lit = link["clause"], link["position"], link["literal"]
        i = abs(lit) - 1
        link["bones"] = [rmap["e"][i] if lit > 0 else rmap["ebar"][i], rmap["f"][j][a]]
    return G, rmap


def reduce_2gel_to_cgel(G: Graph, c: int) -> tuple[Graph, dict]:
    """Identify every edge of G with the bone of a fresh F_c."""
    if c < 3:
        raise ValueError("c must be at least 3")
    B = _Builder(G.n)
    for u, v in G.edges:
        B.edge(u, v)
    for u, v in G.edges:
        _forced_into(B, c, u, v)
    H = B.graph()
    return H, {"bones": [H.edge_id(u, v) for u, v in G.edges]}


# --- UPP reduction ------------------------------------------------------------

_OCTAGON = "abcdefgh"
_TRIANGLE_SIDES = ("bc", "de", "fg", "ha")
_FREE_SIDES = ("ab", "cd", "ef", "gh")


def _upp_block_into(B: _Builder, shared: Optional[dict] = None) -> dict:
    """Octagon a..h with a triangle on bc, de, fg, ha. `shared` pre-binds some of a..h."""
    names = dict(shared or {})
    for x in _OCTAGON:
        if x not in names:
            names[x] = B.vertex()
    apex = {}
    for s in _FREE_SIDES:
        if not shared or s[0] not in shared or s[1] not in shared:
            B.edge(names[s[0]], names[s[1]])
    for s in _TRIANGLE_SIDES:
        t = B.vertex()
        B.edge(names[s[0]], names[s[1]])
        B.edge(names[s[0]], t)
        B.edge(t, names[s[1]])
        apex[s] = t
    return {"names": names, "apex": apex}


def gen_upp_block() -> tuple[Graph, dict]:
    B = _Builder(0)
    blk = _upp_block_into(B)
    G = B.graph()
    nm = blk["names"]
    rmap = {
        "vertices": {x: nm[x] for x in _OCTAGON},
        "free": {s: G.edge_id(nm[s[0]], nm[s[1]]) for s in _FREE_SIDES},
        "triangles": {s: [G.edge_id(nm[s[0]], nm[s[1]]), G.edge_id(nm[s[0]], blk["apex"][s]),
                          G.edge_id(blk["apex"][s], nm[s[1]])] for s in _TRIANGLE_SIDES},
    }
    return G, rmap


def _link(B: _Builder, x: int, y: int) -> int:
    """Triangle x, y, t through a fresh vertex t."""
    t = B.vertex()
    B.ensure_edge(x, y)
    B.edge(x, t)
    B.edge(t, y)
    return t


def variable_chain(B: _Builder, blocks: int) -> list[dict]:
    """Blocks glued alternately: block k shares ab with block k-1 when k is odd, ef when even."""
    out = []
    for k in range(blocks):
        if k == 0:
            shared = None
        elif k % 2 == 1:
            prev = out[-1]["names"]
            shared = {"a": prev["a"], "b": prev["b"]}
        else:
            prev = out[-1]["names"]
            shared = {"e": prev["e"], "f": prev["f"]}
        out.append(_upp_block_into(B, shared))
    return out


def reduce_nae_to_upp(phi: NaeFormula) -> tuple[Graph, dict]:
    """Clause gadgets chained through the odd cd copies of the variable gadgets.

    Each clause must use three distinct variables; otherwise a link would
    join a vertex to itself.
    """
    _check_distinct(phi)
    m = len(phi.clauses)
    B = _Builder(0)
    chains = [variable_chain(B, 4 * m) for _ in range(phi.nvars)]

    def cd(var: int, j: int, p: int) -> tuple[int, int]:
        # Copies 1 and 3 of the four blocks devoted to clause j.
        nm = chains[var][4 * j + (0 if p == 0 else 2)]["names"]
        return nm["c"], nm["d"]

    clause_info = []
    for j, cl in enumerate(phi.clauses):
        fj, lj = B.vertex(), B.vertex()
        alpha, beta = [], []
        for lit in cl:
            pairs = [cd(abs(lit) - 1, j, p) for p in range(2)]
            if lit > 0:
                alpha.append([c for c, _ in pairs])
                beta.append([d for _, d in pairs])
            else:
                alpha.append([d for _, d in pairs])
                beta.append([c for c, _ in pairs])
        links = []
        for p in range(2):
            links.append(("f", p, _link(B, fj, alpha[0][p])))
        for p in range(2):
            links.append(("b1a2", p, _link(B, beta[0][p], alpha[1][p])))
        for p in range(2):
            links.append(("b2a3", p, _link(B, beta[1][p], alpha[2][p])))
        for p in range(2):
            links.append(("l", p, _link(B, beta[2][p], lj)))
        clause_info.append({"f": fj, "l": lj, "alpha": alpha, "beta": beta,
                            "link_apices": [t for _, _, t in links]})
    G = B.graph()
    var_info = []
    for var, chain in enumerate(chains):
        odd = []
        for j in range(m):
            for p in range(2):
                c, d = cd(var, j, p)
                odd.append({"clause": j, "copy": p, "c": c, "d": d, "edge": G.edge_id(c, d)})
        var_info.append({"blocks": [dict(blk["names"]) for blk in chain], "odd_cd": odd})
    return G, {"variables": var_info, "clauses": clause_info}
