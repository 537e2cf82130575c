"""Tree decompositions: PACE .td I/O, validation, nice form, construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import Graph, GraphFormatError


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    tree: tuple[tuple[int, int], ...]  # edges between bag indices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass(frozen=True)
class TDViolation:
    prop: str  # "vertex coverage" | "edge coverage" | "connectivity" | "not a tree"
    witness: tuple


def parse_td(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset] = {}
    tree = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        try:
            nums = [int(t) for t in toks[2:]] if toks[0] == "s" else None
        except ValueError:
            raise GraphFormatError("non-integer field", lineno) from None
        if toks[0] == "s":
            if header is not None or len(toks) != 5 or toks[1] != "td":
                raise GraphFormatError("malformed header, expected 's td <bags> <width+1> <n>'", lineno)
            header = nums
            continue
        if header is None:
            raise GraphFormatError("line before header", lineno)
        try:
            vals = [int(t) for t in (toks[1:] if toks[0] == "b" else toks)]
        except ValueError:
            raise GraphFormatError("non-integer field", lineno) from None
        if toks[0] == "b":
            if not vals:
                raise GraphFormatError("bag line without id", lineno)
            bid, vs = vals[0], vals[1:]
            if not 1 <= bid <= header[0] or bid in bags:
                raise GraphFormatError(f"bad or repeated bag id {bid}", lineno)
            if any(not 1 <= v <= header[2] for v in vs):
                raise GraphFormatError("vertex id out of range", lineno)
            bags[bid] = frozenset(v - 1 for v in vs)
        else:
            if len(vals) != 2 or not all(1 <= x <= header[0] for x in vals):
                raise GraphFormatError("malformed tree edge", lineno)
            tree.append((vals[0] - 1, vals[1] - 1))
    if header is None:
        raise GraphFormatError("missing header line")
    if len(bags) != header[0]:
        raise GraphFormatError(f"header announces {header[0]} bags, found {len(bags)}")
    return TreeDecomposition(tuple(bags[i + 1] for i in range(header[0])), tuple(tree))


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.tree]
    return "\n".join(lines) + "\n"


def validate_td(G: Graph, td: TreeDecomposition) -> Optional[TDViolation]:
    """None if td is a tree decomposition of G, else the first violated property."""
    k = len(td.bags)
    if k == 0:
        return None if G.n == 0 else TDViolation("vertex coverage", (0,))
    if len(td.tree) != k - 1:
        return TDViolation("not a tree", (len(td.tree),))
    adj = td.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != k:
        return TDViolation("not a tree", (min(set(range(k)) - seen),))
    for v in range(G.n):
        if not any(v in b for b in td.bags):
            return TDViolation("vertex coverage", (v,))
    for u, v in G.edges:
        if not any(u in b and v in b for b in td.bags):
            return TDViolation("edge coverage", (u, v))
    for v in range(G.n):
        holders = {i for i, b in enumerate(td.bags) if v in b}
        start = min(holders)
        reach = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in holders and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if reach != holders:
            return TDViolation("connectivity", (v, min(holders - reach)))
    return None


# --- nice decompositions ---------------------------------------------------------

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset
    vertex: Optional[int] = None
    children: tuple[int, ...] = ()


@dataclass
class NiceTreeDecomposition:
    nodes: list[NiceNode] = field(default_factory=list)  # children precede parents
    root: int = -1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def add(self, node: NiceNode) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1


def _chain(nice: NiceTreeDecomposition, top: int, target: frozenset) -> int:
    """Forget then introduce vertices one at a time until the bag equals target."""
    bag = nice.nodes[top].bag
    for v in sorted(bag - target):
        bag = bag - {v}
        top = nice.add(NiceNode(FORGET, bag, v, (top,)))
    for v in sorted(target - bag):
        bag = bag | {v}
        top = nice.add(NiceNode(INTRODUCE, bag, v, (top,)))
    return top


def make_nice(td: TreeDecomposition, root: int = 0) -> NiceTreeDecomposition:
    """Nice form with the same width and an empty root bag."""
    nice = NiceTreeDecomposition()
    if not td.bags:
        nice.root = nice.add(NiceNode(LEAF, frozenset()))
        return nice
    adj = td.neighbors()
    parent = {root: -1}
    order = [root]
    for x in order:
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
    built: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [built[y] for y in sorted(adj[x]) if parent.get(y) == x]
        tops = [_chain(nice, k, bag) for k in kids]
        if not tops:
            leaf = nice.add(NiceNode(LEAF, frozenset()))
            tops = [_chain(nice, leaf, bag)]
        top = tops[0]
        for other in tops[1:]:
            top = nice.add(NiceNode(JOIN, bag, None, (top, other)))
        built[x] = top
    nice.root = _chain(nice, built[root], frozenset())
    return nice


def validate_nice(G: Graph, nice: NiceTreeDecomposition) -> Optional[str]:
    """None if `nice` is a nice tree decomposition of G with an empty root."""
    for i, nd in enumerate(nice.nodes):
        kids = [nice.nodes[c] for c in nd.children]
        if any(c >= i for c in nd.children):
            return f"node {i}: child listed after parent"
        if nd.kind == LEAF and (kids or nd.bag):
            return f"node {i}: leaf must be empty and childless"
        if nd.kind == INTRODUCE and (len(kids) != 1 or nd.bag != kids[0].bag | {nd.vertex}
                                     or nd.vertex in kids[0].bag):
            return f"node {i}: bad introduce"
        if nd.kind == FORGET and (len(kids) != 1 or nd.bag != kids[0].bag - {nd.vertex}
                                  or nd.vertex not in kids[0].bag):
            return f"node {i}: bad forget"
        if nd.kind == JOIN and (len(kids) != 2 or any(k.bag != nd.bag for k in kids)):
            return f"node {i}: bad join"
    if nice.nodes[nice.root].bag:
        return "root bag not empty"
    tree = []
    for i, nd in enumerate(nice.nodes):
        tree += [(c, i) for c in nd.children]
    plain = TreeDecomposition(tuple(nd.bag for nd in nice.nodes), tuple(tree))
    bad = validate_td(G, plain)
    return None if bad is None else f"{bad.prop}: {bad.witness}"


# --- construction ----------------------------------------------------------------


def _td_from_order(G: Graph, order: Sequence[int]) -> TreeDecomposition:
    pos = {v: i for i, v in enumerate(order)}
    nbr = [set(a) for a in G.adj]
    bags = []
    for v in order:
        later = {w for w in nbr[v] if pos[w] > pos[v]}
        bags.append(frozenset(later | {v}))
        for a in later:
            nbr[a] |= later - {a}
    tree = []
    roots = []
    for i, v in enumerate(order):
        later = bags[i] - {v}
        if later:
            nxt = min(later, key=pos.__getitem__)
            tree.append((i, pos[nxt]))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        tree.append((a, b))
    return TreeDecomposition(tuple(bags), tuple(tree))


def min_fill_order(G: Graph) -> list[int]:
    nbr = [set(a) for a in G.adj]
    alive = set(range(G.n))
    order = []
    while alive:
        best = None
        for v in sorted(alive):
            ns = list(nbr[v])
            fill = sum(1 for i in range(len(ns)) for j in range(i + 1, len(ns))
                       if ns[j] not in nbr[ns[i]])
            key = (fill, len(ns), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        ns = nbr[v]
        for a in ns:
            nbr[a] |= ns - {a}
            nbr[a].discard(v)
        alive.discard(v)
        order.append(v)
    return order


def _exact_order(G: Graph) -> list[int]:
    """Optimal elimination order by memoized search over eliminated sets."""
    n = G.n
    adjm = [0] * n
    for u, v in G.edges:
        adjm[u] |= 1 << v
        adjm[v] |= 1 << u
    full = (1 << n) - 1

    def q(S: int, v: int) -> int:
        # Vertices outside S + v reachable from v through S.
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            x = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            nb = adjm[x] & ~seen
            seen |= nb
            out |= nb & ~S
            frontier |= nb & S
        return out

    heuristic = min_fill_order(G)
    ub = _order_width(G, heuristic)
    memo: dict[int, int] = {}

    def best(S: int) -> int:
        if S == full:
            return -1
        if S in memo:
            return memo[S]
        res = n
        rest = full & ~S
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            d = bin(q(S, v)).count("1")
            if d >= res:
                continue
            res = min(res, max(d, best(S | (1 << v))))
        memo[S] = res
        return res

    if best(0) >= ub:
        return heuristic
    order = []
    S = 0
    target = best(0)
    while S != full:
        rest = full & ~S
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if max(bin(q(S, v)).count("1"), best(S | (1 << v))) <= target:
                order.append(v)
                S |= 1 << v
                break
    return order


def _order_width(G: Graph, order: Sequence[int]) -> int:
    return _td_from_order(G, order).width


def build_td(G: Graph, mode: str = "heuristic") -> TreeDecomposition:
    """Decomposition from a min-fill order, or an optimal one for n <= 15."""
    if G.n == 0:
        return TreeDecomposition((), ())
    if mode == "heuristic":
        order = min_fill_order(G)
    elif mode == "exact_small":
        if G.n > 15:
            raise ValueError("exact_small mode supports at most 15 vertices")
        order = _exact_order(G)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _td_from_order(G, order)


def treewidth_exact(G: Graph) -> int:
    return build_td(G, "exact_small").width if G.n else -1
