"""Command-line entry point. Every command prints one JSON object on stdout.

Exit codes: 0 answered, 2 input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .brute import BudgetExhausted, SearchBudget, brute_c_gel, brute_gel, brute_upp_orientations
from .dp import dp_c_gel, min_gel_via_iteration
from .dp_orient import dp_orientation_gel
from .gadgets import (gen_color, gen_extremal, gen_forced, gen_hypercube_with_gel, gen_knplus,
                      gen_propagation, gen_upp_block, reduce_2gel_to_cgel, reduce_nae_to_2gel,
                      reduce_nae_to_upp)
from .graph import (Graph, GraphFormatError, find_star_forest_modulator, format_digraph, format_graph,
                    is_forest, parse_digraph, parse_graph, parse_labeling, parse_vertex_set)
from .kernel import kernelize, lift_labeling, reduce_graph
from .labeling import EdgeLabeling, check_witness, is_good_labeling
from .nae import brute_nae, nae_satisfied, parse_dimacs_nae
from .sfm import solve_sfm
from .td import build_td, make_nice, parse_td, validate_td
from .upp import check_upp_witness, find_upp_orientation, is_upp

SCHEMA = "gelab.job/1"
EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> tuple[Graph, Optional[list[int]]]:
    return parse_graph(_read(path))


def _edges_json(G: Graph, labels: Sequence[int]) -> list[list[int]]:
    return [[u + 1, v + 1, int(labels[i])] for i, (u, v) in enumerate(G.edges)]


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _budget(args) -> SearchBudget:
    kw = {}
    if getattr(args, "budget_nodes", None):
        kw["node_cap"] = args.budget_nodes
    if getattr(args, "budget_secs", None):
        kw["time_cap"] = args.budget_secs
    return SearchBudget(**kw)


def _labeling_result(G: Graph, lab: Optional[Sequence[int]], c: Optional[int] = None) -> dict:
    """good/bad result after re-verifying the witness."""
    if lab is None:
        return {"status": "bad"}
    lab = EdgeLabeling(lab)
    if not is_good_labeling(G, lab).good:
        raise AssertionError("solver returned a labeling that does not verify")
    if c is not None and lab.c > c:
        raise AssertionError("solver used more labels than allowed")
    return {"status": "good", "c": lab.c, "labeling": _edges_json(G, lab)}


# --- commands -----------------------------------------------------------------


def cmd_verify(args) -> dict:
    G, labels = _load_graph(args.graph)
    if args.labels:
        labels = parse_labeling(G, _read(args.labels))
    if labels is None:
        raise InputError("no labels: pass -l FILE or a labeled graph file")
    v = is_good_labeling(G, labels)
    out: dict = {"status": v.status, "c": len(set(labels))}
    if not v.good:
        assert check_witness(G, labels, v)
        if v.cycle is not None:
            out["witness"] = {"cycle": [x + 1 for x in v.cycle]}
        else:
            out["witness"] = {"pair": [x + 1 for x in v.pair], "paths": [[x + 1 for x in p] for p in v.paths]}
    return out


def _nice(G: Graph, td_path: Optional[str]):
    if td_path:
        td = parse_td(_read(td_path))
        bad = validate_td(G, td)
        if bad is not None:
            raise InputError(f"invalid tree decomposition: {bad.prop}")
    else:
        td = build_td(G)
    return make_nice(td)


def _modulator(G: Graph, args) -> list[int]:
    if args.modulator:
        return parse_vertex_set(_read(args.modulator), G.n)
    for k in range(args.max_modulator + 1):
        X = find_star_forest_modulator(G, k)
        if X is not None:
            return X
    raise InputError(f"no star-forest modulator of size <= {args.max_modulator}; pass --modulator")


def _solve_auto(G: Graph, args, budget: SearchBudget, stats: dict) -> tuple[str, Optional[EdgeLabeling]]:
    c = args.c
    if c == 1:
        return "forest", EdgeLabeling([1] * G.m) if is_forest(G) else None
    red = reduce_graph(G, c=c)
    stats["reduced_n"], stats["reduced_m"] = red.graph.n, red.graph.m
    if red.rejected:
        stats["reject"] = {"kind": red.reject[0], "vertices": [v + 1 for v in red.reject[1]]}
        return "kernel", None
    H = red.graph
    if is_forest(H):
        return "kernel", lift_labeling(G, red, [1] * H.m)
    if c is None:
        for k in range(min(args.max_modulator, 3) + 1):
            X = find_star_forest_modulator(H, k)
            if X is not None:
                try:
                    lab = solve_sfm(H, X, budget)
                    return "sfm", None if lab is None else lift_labeling(G, red, lab)
                except BudgetExhausted:
                    break
    nice = make_nice(build_td(H))
    stats["width"] = nice.width
    try:
        if c is None:
            res = dp_orientation_gel(H, nice, budget=budget)
            return "orient", None if res is None else lift_labeling(G, red, res[0])
        lab = dp_c_gel(H, nice, c, budget=budget)
        return "twdp", None if lab is None else lift_labeling(G, red, lab)
    except BudgetExhausted:
        pass
    lab = brute_gel(H, budget) if c is None else brute_c_gel(H, c, budget)
    return "brute", None if lab is None else lift_labeling(G, red, lab)


def cmd_solve(args) -> dict:
    G, _ = _load_graph(args.graph)
    if args.c is not None and args.c < 1:
        raise InputError("--c must be at least 1")
    budget = _budget(args)
    stats: dict = {}
    method = args.method
    if method == "brute":
        lab = brute_gel(G, budget, stats) if args.c is None else brute_c_gel(G, args.c, budget, stats)
    elif method == "sfm":
        if args.c is not None:
            raise InputError("the sfm method solves GEL only; drop --c")
        X = _modulator(G, args)
        stats["modulator"] = [x + 1 for x in X]
        lab = solve_sfm(G, X, budget, stats)
        stats.pop("rho", None)
    elif method == "twdp":
        nice = _nice(G, args.td)
        stats["width"] = nice.width
        if args.c is None:
            res = min_gel_via_iteration(G, nice, stats, budget)
            lab = None if res is None else res[1]
        else:
            lab = dp_c_gel(G, nice, args.c, stats=stats, budget=budget)
        stats.pop("per_node", None)
    elif method == "orient":
        nice = _nice(G, args.td)
        stats["width"] = nice.width
        res = dp_orientation_gel(G, nice, stats, budget)
        lab = None if res is None else res[0]
    else:
        method, lab = _solve_auto(G, args, budget, stats)
    out = _labeling_result(G, lab, args.c)
    out["method"] = method
    out["stats"] = stats
    return out


def cmd_kernelize(args) -> dict:
    G, _ = _load_graph(args.graph)
    cover = parse_vertex_set(_read(args.cover), G.n) if args.cover else None
    if cover is not None and args.param != "vc":
        raise InputError("--cover only applies to --param vc")
    try:
        res = kernelize(G, args.param, cover)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out: dict = {"status": "reject" if res.rejected else "reduced", "param": args.param,
                 "trace": res.trace.to_json()}
    if res.rejected:
        out["witness"] = {"kind": res.reject[0], "vertices": [v + 1 for v in res.reject[1]]}
        return out
    text = format_graph(res.graph)
    out.update(n=res.graph.n, m=res.graph.m, vmap=[v + 1 for v in res.vmap],
               components=[{"vertices": [v + 1 for v in vs], "param": p} for vs, p in res.components])
    if args.output:
        Path(args.output).write_text(text)
    else:
        out["graph"] = text
    return out


def _gadget(spec: str):
    name, _, rest = spec.partition(":")

    def num(s: str) -> int:
        try:
            return int(s)
        except ValueError:
            raise InputError(f"expected an integer in gadget spec {spec!r}") from None

    if name == "propagation":
        return gen_propagation()
    if name == "extremal":
        return gen_extremal()
    if name == "color":
        return gen_color(num(rest))
    if name == "hypercube":
        G, lab = gen_hypercube_with_gel(num(rest))
        return G, {}, lab
    if name == "forced":
        return gen_forced(num(rest))
    if name == "knplus":
        return gen_knplus(num(rest)), {}
    if name == "block-upp":
        return gen_upp_block()
    if name in ("reduce2gel", "reduceupp"):
        phi = parse_dimacs_nae(_read(rest))
        return reduce_nae_to_2gel(phi) if name == "reduce2gel" else reduce_nae_to_upp(phi)
    if name == "reducecgel":
        path, _, c = rest.rpartition(":")
        G2, _ = reduce_nae_to_2gel(parse_dimacs_nae(_read(path)))
        return reduce_2gel_to_cgel(G2, num(c))
    raise InputError(f"unknown gadget {spec!r}")


def cmd_gen(args) -> dict:
    try:
        made = _gadget(args.gadget)
    except ValueError as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise InputError(str(exc)) from None
    G, rmap = made[0], made[1]
    labels = made[2] if len(made) > 2 else None
    text = format_graph(G, labels)
    out: dict = {"status": "ok", "gadget": args.gadget, "n": G.n, "m": G.m, "map": _jsonable(rmap)}
    if args.output:
        Path(args.output).write_text(text)
        if rmap:
            Path(args.output + ".map.json").write_text(json.dumps(out["map"], indent=1) + "\n")
    else:
        out["graph"] = text
    return out


def cmd_upp(args) -> dict:
    if args.action == "check":
        D = parse_digraph(_read(args.file))
        v = is_upp(D)
        out: dict = {"status": v.status}
        if not v.upp:
            assert check_upp_witness(D, v)
            out["witness"] = {"pair": [x + 1 for x in v.pair], "paths": [[x + 1 for x in p] for p in v.paths]}
        return out
    G, _ = _load_graph(args.file)
    budget = _budget(args)
    if args.search:
        D = find_upp_orientation(G, budget)
        if D is None:
            return {"status": "violation", "count": 0}
        assert is_upp(D).upp
        return {"status": "upp", "orientation": format_digraph(D)}
    count, kept = brute_upp_orientations(G, budget, args.limit)
    return {"status": "upp" if count else "violation", "count": count,
            "orientations": [format_digraph(D) for D in kept]}


def cmd_nae(args) -> dict:
    phi = parse_dimacs_nae(_read(args.cnf))
    a = brute_nae(phi)
    if a is None:
        return {"status": "unsat"}
    assert nae_satisfied(phi, a)
    return {"status": "sat", "assignment": [i + 1 if x else -(i + 1) for i, x in enumerate(a)]}


# --- driver -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gelab", description="Good edge-labeling toolkit.")
    p.add_argument("--timing", action="store_true", help="include wall time in the output")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; solvers are single-threaded")
    sub = p.add_subparsers(dest="command", required=True)

    def budgets(q):
        q.add_argument("--budget-nodes", type=int)
        q.add_argument("--budget-secs", type=float)

    q = sub.add_parser("verify", help="check a labeling")
    q.add_argument("-g", "--graph", required=True)
    q.add_argument("-l", "--labels")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("solve", help="decide GEL or c-GEL")
    q.add_argument("-g", "--graph", required=True)
    q.add_argument("--method", choices=["brute", "sfm", "twdp", "orient", "auto"], default="auto")
    q.add_argument("--c", type=int)
    q.add_argument("--modulator")
    q.add_argument("--max-modulator", type=int, default=4)
    q.add_argument("--td")
    budgets(q)
    q.set_defaults(func=cmd_solve)

    q = sub.add_parser("kernelize", help="apply the reduction rules")
    q.add_argument("-g", "--graph", required=True)
    q.add_argument("--param", choices=["nd", "vc"], default="nd")
    q.add_argument("--cover")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_kernelize)

    q = sub.add_parser("gen", help="generate a gadget or reduction instance")
    q.add_argument("--gadget", required=True)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("upp", help="unique path property")
    q.add_argument("action", choices=["check", "enumerate"])
    q.add_argument("file", help="digraph file for check, graph file for enumerate")
    q.add_argument("--limit", type=int, default=10)
    q.add_argument("--search", action="store_true", help="find one orientation by pruned search")
    budgets(q)
    q.set_defaults(func=cmd_upp)

    q = sub.add_parser("nae", help="NAE-3SAT")
    q.add_argument("action", choices=["solve"])
    q.add_argument("cnf")
    q.set_defaults(func=cmd_nae)
    return p


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=1) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.threads < 1:
        print("gelab: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    start = time.monotonic()
    try:
        result = args.func(args)
        code = EXIT_OK
    except BudgetExhausted as exc:
        result = {"status": "exhausted", "reason": str(exc)}
        code = EXIT_BUDGET
    except (InputError, GraphFormatError, ValueError) as exc:
        print(f"gelab: {exc}", file=sys.stderr)
        _emit({"schema": SCHEMA, "command": args.command, "status": "error", "error": str(exc)})
        return EXIT_INPUT
    out = {"schema": SCHEMA, "command": args.command, **result}
    if args.timing:
        out["wall_secs"] = round(time.monotonic() - start, 6)
    _emit(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
