"""Instance corpus: every small connected multigraph, plus named families.

The standard corpus holds every connected loopless multigraph with at most
``max_n`` vertices and ``max_m`` edges, one per isomorphism class.  Each
class is obtained from its underlying simple graph (taken from the networkx
graph atlas, which lists every simple graph on up to seven vertices once) by
giving each edge a multiplicity; two multiplicity vectors describe the same
multigraph exactly when an automorphism of the simple graph maps one onto
the other.
"""

from __future__ import annotations

import hashlib
import shlex
from functools import lru_cache
from itertools import combinations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .generators import (
    complete_graph,
    cycle_graph,
    gen_multicycle,
    gen_tree_closure,
    path_graph,
    random_multigraph,
    star_graph,
    theta_graph,
)
from .graphio import format_graph
from .multigraph import Multigraph


def _multiplicity_vectors(k: int, extra: int):
    """Vectors of ``k`` positive multiplicities summing to ``k + extra``."""
    for bars in combinations(range(extra + k - 1), k - 1):
        prev = -1
        vec = []
        for b in bars + (extra + k - 1,):
            vec.append(b - prev)
            prev = b
        yield tuple(vec)


def _atlas_multigraphs(h: nx.Graph, max_m: int) -> list[Multigraph]:
    edges = sorted(tuple(sorted(e)) for e in h.edges())
    index = {e: i for i, e in enumerate(edges)}
    perms = []
    for iso in GraphMatcher(h, h).isomorphisms_iter():
        perms.append([index[tuple(sorted((iso[u], iso[v])))] for u, v in edges])
    out = []
    k = len(edges)
    for extra in range(max_m - k + 1):
        for vec in _multiplicity_vectors(k, extra):
            images = []
            for perm in perms:
                moved = [0] * k
                for i, j in enumerate(perm):
                    moved[j] = vec[i]
                images.append(tuple(moved))
            if min(images) != vec:
                continue
            out.append(Multigraph(h.number_of_nodes(), tuple(e for e, mult in zip(edges, vec) for _ in range(mult))))
    return out


@lru_cache(maxsize=4)
def standard_corpus(max_n: int = 6, max_m: int = 9) -> tuple[Multigraph, ...]:
    """All connected multigraphs with ``2..max_n`` vertices and at most ``max_m`` edges."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at seven vertices")
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n < 2 or n > max_n or h.number_of_edges() > max_m or not nx.is_connected(h):
            continue
        out.extend(_atlas_multigraphs(h, max_m))
    out.sort(key=lambda g: (g.n, g.size, g.edges))
    return tuple(out)


# -- named families -------------------------------------------------------------


def _kv(tokens: list[str]) -> dict[str, int]:
    params = {}
    for tok in tokens:
        if "=" not in tok:
            raise ValueError(f"expected key=value, got {tok!r}")
        key, value = tok.split("=", 1)
        params[key] = int(value)
    return params


FAMILIES = {
    "treeclosure": (("q", "p"), lambda a: gen_tree_closure(a["q"], a["p"])),
    "multicycle": (("L", "p"), lambda a: gen_multicycle(a["L"], a["p"])),
    "clique": (("n",), lambda a: complete_graph(a["n"])),
    "cycle": (("n",), lambda a: cycle_graph(a["n"])),
    "path": (("n",), lambda a: path_graph(a["n"])),
    "star": (("k",), lambda a: star_graph(a["k"])),
    "theta": (("k", "l"), lambda a: theta_graph(a["k"], a["l"])),
    "random": (("n", "m", "seed"), lambda a: random_multigraph(a["n"], a["m"], a["seed"])),
}


def from_spec(text: str) -> Multigraph:
    """Build an instance from a family string such as ``"multicycle L=4 p=2"``."""
    tokens = shlex.split(text)
    if not tokens:
        raise ValueError("empty family string")
    name, args = tokens[0], _kv(tokens[1:])
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    keys, build = FAMILIES[name]
    missing = [k for k in keys if k not in args]
    unknown = [k for k in args if k not in keys]
    if missing or unknown:
        raise ValueError(f"family {name} takes {', '.join(keys)}")
    return build(args)


GENERATED_SPECS = (
    "treeclosure q=1 p=4",
    "treeclosure q=2 p=3",
    "treeclosure q=3 p=2",
    "multicycle L=3 p=2",
    "multicycle L=3 p=3",
    "multicycle L=4 p=2",
    "multicycle L=5 p=2",
    "clique n=5",
    "clique n=6",
    "cycle n=7",
    "cycle n=8",
    "theta k=3 l=2",
    "theta k=3 l=3",
    "theta k=4 l=2",
    "random n=7 m=12 seed=1",
    "random n=8 m=14 seed=7",
    "random n=8 m=12 seed=11",
    "random n=9 m=13 seed=3",
)


def generated_families() -> list[tuple[str, Multigraph]]:
    return [(spec, from_spec(spec)) for spec in GENERATED_SPECS]


def spec_filename(spec: str) -> str:
    return "_".join(spec.replace("=", "").split()) + ".mg"


def render(spec: str) -> str:
    return format_graph(from_spec(spec), comment=f"family: {spec}")


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
