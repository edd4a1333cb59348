"""``manycolours`` command line: every operation behind one JSON-reporting front end.

Exit status: 0 success, 1 when a returned certificate or checked inequality
fails, 2 on parse errors, bad arguments or exhausted budgets.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .corpus import GENERATED_SPECS, from_spec, render, spec_filename, standard_corpus
from .density import arboricity, max_density_subgraph, min_indegree_orientation
from .dual import arbstar_exact_witness, check_dual_proposition, colour_cuts_via_packing, tree_packing, verify_cut_colouring
from .errors import BudgetExceeded, GraphParseError, InvariantViolation
from .expansion import NAMED_FUNCTIONS, check_blowup_lemma, check_expansion_theorem, embed_Ta_into_blowup
from .fraternal import MAX_LAYER_ARCS, audit, complete_to_depth, composition_bound, conflict_degree_bound, conflicts
from .generators import complete_graph
from .graphio import format_graph, parse_colouring, parse_graph, to_dot
from .rainbow import arbp_exact_witness, arbp_lower_bound, colour_arbp, verify_colouring
from .search import MAX_SEARCH_EDGES, MAX_SEARCH_NODES
from .shallow import MAX_BRANCH_SETS, mtrdens, shallow_minor_density
from .structure import MAX_BIPARTITIONS, MAX_CYCLES
from .treedepth import MAX_TD_VERTICES, check_td_cycle_bounds, treedepth_exact

SCHEMA = "manycolours-report/1"

BUDGETS = {
    "cycles": MAX_CYCLES,
    "bipartitions": MAX_BIPARTITIONS,
    "treedepth_vertices": MAX_TD_VERTICES,
    "palette_search_nodes": MAX_SEARCH_NODES,
    "palette_search_edges": MAX_SEARCH_EDGES,
    "branch_sets": MAX_BRANCH_SETS,
    "completion_layer_arcs": MAX_LAYER_ARCS,
}


class Failure(Exception):
    """A computed certificate or inequality did not hold; carries the result payload."""

    def __init__(self, result):
        super().__init__("verification failed")
        self.result = result


def _load(args):
    raw = Path(args.graph).read_bytes()
    args._digest = hashlib.sha256(raw).hexdigest()
    return parse_graph(raw.decode())


def _frac(x: Fraction) -> str:
    return str(x)


# -- handlers -------------------------------------------------------------


def cmd_arbp_colour(args):
    g = _load(args)
    res = colour_arbp(g, args.p, proper=args.proper)
    return res.to_json()


def cmd_arbp_verify(args):
    g = _load(args)
    colours = parse_colouring(Path(args.colours).read_text(), g.size)
    rep = verify_colouring(g, colours, args.p)
    out = rep.to_json()
    if not rep.valid:
        raise Failure(out)
    return out


def cmd_arbp_exact(args):
    g = _load(args)
    value, colours = arbp_exact_witness(g, args.p)
    return {"p": args.p, "value": value, "colours": colours, "witness_valid": verify_colouring(g, colours, args.p).valid}


def cmd_arbp_lower(args):
    g = _load(args)
    return {"p": args.p, **arbp_lower_bound(g, args.p).to_json()}


def cmd_td_exact(args):
    g = _load(args)
    value, dec = treedepth_exact(g)
    return {"value": value, "forest_parent": list(dec.parent), "witness_valid": dec.is_valid_for(g)}


def cmd_td_bounds(args):
    g = _load(args)
    rep = check_td_cycle_bounds(g)
    out = rep.to_json()
    if not rep.holds:
        raise Failure(out)
    return out


def cmd_density_mtr(args):
    g = _load(args)
    d = mtrdens(g, args.r)
    emb = d.embedding
    return {
        "r2": args.r,
        "value": _frac(d.value),
        "branch_vertices": list(emb.branch_vertices),
        "pattern_edges": [list(e) for e in emb.pattern.edges],
        "paths": [{"vertices": list(p.vertices), "edges": list(p.edges)} for p in emb.branch_paths],
        "witness_valid": emb.validate(g, args.r),
    }


def cmd_density_minor(args):
    g = _load(args)
    value, fam = shallow_minor_density(g, args.r)
    return {"r": args.r, "value": _frac(value), "branch_sets": [list(b) for b in fam]}


def cmd_density_max(args):
    g = _load(args)
    w = max_density_subgraph(g)
    return {"value": _frac(w.value), "vertex_set": list(w.vertex_set), "edges": w.edges}


def cmd_density_arboricity(args):
    g = _load(args)
    k, w = arboricity(g)
    o = min_indegree_orientation(g)
    return {
        "value": k,
        "witness": {"vertex_set": list(w.vertex_set), "edges": w.edges, "ratio": _frac(w.value)},
        "orientation_heads": list(o.heads),
        "max_indegree": o.max_indegree,
    }


def cmd_lemma_blowup(args):
    g = _load(args)
    rep = check_blowup_lemma(g, args.m, args.r)
    out = rep.to_json()
    if not rep.holds:
        raise Failure(out)
    return out


def cmd_lemma_embed(args):
    g = _load(args)
    fc = complete_to_depth(min_indegree_orientation(g), args.a)
    emb = embed_Ta_into_blowup(fc, args.a)
    out = emb.to_json()
    if not out["valid"]:
        raise Failure(out)
    return out


def cmd_lemma_expansion(args):
    g = _load(args)
    rep = check_expansion_theorem(g, NAMED_FUNCTIONS[args.f](), args.r)
    out = {"f": args.f, **rep.to_json()}
    if not rep.holds:
        raise Failure(out)
    return out


def cmd_dual_exact(args):
    g = _load(args)
    value, colours = arbstar_exact_witness(g, args.p)
    return {"p": args.p, "value": value, "colours": colours, "witness_valid": verify_cut_colouring(g, colours, args.p).valid}


def cmd_dual_pack(args):
    g = _load(args)
    trees = tree_packing(g, args.k)
    return {"k": args.k, "found": trees is not None, "trees": trees}


def cmd_dual_colour(args):
    g = _load(args)
    res = colour_cuts_via_packing(g, args.p)
    if res is None:
        return {"p": args.p, "found": False}
    out = {"p": args.p, "found": True, **res.to_json()}
    if not res.report.valid:
        raise Failure(out)
    return out


def cmd_dual_prop(args):
    extra = [(f"clique n={n}", complete_graph(n)) for n in args.cliques]
    rows = check_dual_proposition(args.p, args.sizes, extra)
    out = {"p": args.p, "rows": [r.to_json() for r in rows]}
    if not all(r.holds for r in rows):
        raise Failure(out)
    return out


def cmd_inspect(args):
    g = _load(args)
    fc = complete_to_depth(min_indegree_orientation(g), args.depth)
    cg = conflicts(fc)
    return {
        "completion": fc.to_json(),
        "audit": audit(fc),
        "composition_bound": composition_bound(fc),
        "conflict_degree_bound": conflict_degree_bound(fc),
        # the bound read with the top layer's in-degree only
        "conflict_degree_bound_top_layer": 3 * fc.depth * composition_bound(fc) * max(2, fc.layer_indegree[-1]) ** fc.depth,
        "conflict_max_in_degree": cg.max_in_degree,
        "conflict_max_degree": cg.max_degree,
        "self_conflicts": cg.self_conflicts,
        "conflict_pairs": [list(p) for p in cg.pairs()],
    }


def cmd_corpus_generate(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    specs = args.specs or list(GENERATED_SPECS)
    files = []
    for spec in specs:
        text = render(spec)
        path = out / spec_filename(spec)
        path.write_text(text)
        files.append({"spec": spec, "file": path.name, "sha256": hashlib.sha256(text.encode()).hexdigest()})
    return {"files": files}


def cmd_corpus_standard(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    graphs = standard_corpus(args.max_n, args.max_m)
    for i, g in enumerate(graphs):
        (out / f"g{i:05d}.mg").write_text(format_graph(g))
    return {"count": len(graphs), "directory": str(out)}


def _check_one(job):
    idx, g, ps = job
    bad = []
    for p in ps:
        try:
            res = colour_arbp(g, p)
        except InvariantViolation as exc:
            bad.append({"index": idx, "p": p, "error": str(exc)})
            continue
        if res.colouring.palette_size > res.bound + 1:
            bad.append({"index": idx, "p": p, "error": "palette above bound"})
    return bad


def cmd_corpus_check(args):
    graphs = standard_corpus(args.max_n, args.max_m)
    jobs = [(i, g, tuple(args.p)) for i, g in enumerate(graphs)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_check_one, jobs, chunksize=64))
    else:
        results = [_check_one(j) for j in jobs]
    failures = [f for r in results for f in r]
    out = {"instances": len(graphs), "p": list(args.p), "failures": failures}
    if failures:
        raise Failure(out)
    return out


def cmd_graph_dot(args):
    g = _load(args)
    colours = parse_colouring(Path(args.colours).read_text(), g.size) if args.colours else None
    return {"dot": to_dot(g, colours)}


def cmd_graph_family(args):
    g = from_spec(args.spec)
    text = format_graph(g, comment=f"family: {args.spec}")
    return {"spec": args.spec, "vertices": g.n, "edges": g.size, "graph": text, "sha256": hashlib.sha256(text.encode()).hexdigest()}


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="manycolours", description="Edge colourings where cycles (or cuts) see many colours.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    top = ap.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, help, graph=True):
        p = sub.add_parser(name, help=help)
        if graph:
            p.add_argument("graph", help="graph file in 'p mgraph' format")
        p.set_defaults(func=func)
        return p

    arbp = top.add_parser("arbp", help="cycle colourings").add_subparsers(dest="cmd", required=True)
    p = leaf(arbp, "colour", cmd_arbp_colour, "colour via fraternal completion")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--proper", action="store_true", help="also forbid equal colours on adjacent edges")
    p = leaf(arbp, "verify", cmd_arbp_verify, "check a colouring file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--colours", required=True)
    p = leaf(arbp, "exact", cmd_arbp_exact, "exhaustive minimum palette")
    p.add_argument("--p", type=int, required=True)
    p = leaf(arbp, "lower", cmd_arbp_lower, "lower bound from shallow patterns")
    p.add_argument("--p", type=int, required=True)

    td = top.add_parser("td", help="tree-depth").add_subparsers(dest="cmd", required=True)
    leaf(td, "exact", cmd_td_exact, "exact tree-depth with witness forest")
    leaf(td, "bounds", cmd_td_bounds, "tree-depth against the longest cycle")

    dens = top.add_parser("density", help="densities").add_subparsers(dest="cmd", required=True)
    p = leaf(dens, "mtr", cmd_density_mtr, "shallow topological minor density")
    p.add_argument("--r", type=int, required=True, help="twice the depth (half-integer depths allowed)")
    p = leaf(dens, "minor", cmd_density_minor, "shallow minor density (simplified graph)")
    p.add_argument("--r", type=int, required=True)
    leaf(dens, "max", cmd_density_max, "maximum subgraph density")
    leaf(dens, "arboricity", cmd_density_arboricity, "arboricity with witness and orientation")

    lem = top.add_parser("lemma", help="blow-up, embedding and expansion checks").add_subparsers(dest="cmd", required=True)
    p = leaf(lem, "blowup", cmd_lemma_blowup, "density of a blow-up")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True, help="twice the depth")
    p = leaf(lem, "embed", cmd_lemma_embed, "embed a subdivided completion layer in a blow-up")
    p.add_argument("--a", type=int, required=True)
    p = leaf(lem, "expansion", cmd_lemma_expansion, "shallow minor density against N_f")
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--f", choices=sorted(NAMED_FUNCTIONS), default="identity")

    dual = top.add_parser("dual", help="cut colourings").add_subparsers(dest="cmd", required=True)
    p = leaf(dual, "exact", cmd_dual_exact, "exhaustive minimum palette for cuts")
    p.add_argument("--p", type=int, required=True)
    p = leaf(dual, "pack", cmd_dual_pack, "edge-disjoint spanning trees")
    p.add_argument("--k", type=int, required=True)
    p = leaf(dual, "colour", cmd_dual_colour, "cut colouring from tree packings")
    p.add_argument("--p", type=int, required=True)
    p = leaf(dual, "prop", cmd_dual_prop, "multicycle growth and connectivity cases", graph=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5])
    p.add_argument("--cliques", type=int, nargs="*", default=[5])

    p = leaf(top, "inspect", cmd_inspect, "dump a fraternal completion and its conflicts")
    p.add_argument("--depth", type=int, required=True)

    corp = top.add_parser("corpus", help="instance corpus").add_subparsers(dest="cmd", required=True)
    p = leaf(corp, "generate", cmd_corpus_generate, "write family instances", graph=False)
    p.add_argument("--out", required=True)
    p.add_argument("specs", nargs="*", help='family strings such as "multicycle L=4 p=2"')
    for name, func, help in (("standard", cmd_corpus_standard, "write every small multigraph"), ("check", cmd_corpus_check, "run the colouring pipeline on the corpus")):
        p = leaf(corp, name, func, help, graph=False)
        p.add_argument("--max-n", type=int, default=6)
        p.add_argument("--max-m", type=int, default=9)
        if name == "standard":
            p.add_argument("--out", required=True)
        else:
            p.add_argument("--p", type=int, nargs="+", default=[1, 2, 3])
            p.add_argument("--jobs", type=int, default=1)

    gr = top.add_parser("graph", help="graph utilities").add_subparsers(dest="cmd", required=True)
    p = leaf(gr, "dot", cmd_graph_dot, "DOT export")
    p.add_argument("--colours")
    p = leaf(gr, "family", cmd_graph_family, "build a family instance", graph=False)
    p.add_argument("spec")
    return ap


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    ap = build_parser()
    args = ap.parse_args(argv)
    report: dict = {
        "schema": SCHEMA,
        "command": [args.group] + ([args.cmd] if hasattr(args, "cmd") else []),
        "budget": {"limits": dict(BUDGETS)},
    }
    started = time.perf_counter()
    status = 0
    try:
        report["result"] = args.func(args)
    except Failure as exc:
        report["result"] = exc.result
        status = 1
    except (GraphParseError, BudgetExceeded, ValueError, OSError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, BudgetExceeded):
            report["budget"]["exceeded"] = {"what": exc.what, "limit": exc.limit}
        status = 2
    except InvariantViolation as exc:
        report["error"] = {"type": "InvariantViolation", "message": str(exc)}
        status = 1
    if hasattr(args, "_digest"):
        report["input_sha256"] = args._digest
    report["status"] = status
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - started, 6)
    return status, report


def main(argv: list[str] | None = None) -> int:
    status, report = run(argv)
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    if "error" in report:
        print(f"manycolours: {report['error']['message']}", file=sys.stderr)
    return status
