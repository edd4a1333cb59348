"""The cut version: every edge cut ``w`` must see ``min(|w|, p+1)`` colours.

Upper bounds come from edge-disjoint spanning trees: with ``p+1`` of them,
colour tree ``i`` with ``i``; otherwise double every edge, pack ``2p+1``
trees, and colour each original edge by the pair of colours on its copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .density import matroid_partition
from .expansion import pair_colour_index
from .multigraph import Multigraph
from .rainbow import EdgeColouring
from .search import Requirement, min_palette
from .structure import MAX_BIPARTITIONS, Cut, enumerate_cuts


@dataclass(frozen=True)
class CutColouringReport:
    parameter_p: int
    valid: bool
    violating_cut: Cut | None = None
    colours_on_cut: int = 0
    required: int = 0

    def to_json(self) -> dict:
        out = {"p": self.parameter_p, "valid": self.valid}
        if self.violating_cut is not None:
            out["violating_cut"] = {
                "side": sorted(self.violating_cut.side),
                "edges": list(self.violating_cut.edges),
                "colours": self.colours_on_cut,
                "required": self.required,
            }
        return out


def verify_cut_colouring(g: Multigraph, col: EdgeColouring | Sequence[int], p: int, limit: int = MAX_BIPARTITIONS) -> CutColouringReport:
    """First cut (in enumeration order) seeing fewer than ``min(|w|, p+1)`` colours."""
    colours = col.colours if isinstance(col, EdgeColouring) else tuple(col)
    if len(colours) != g.size:
        raise ValueError("colouring must cover every edge")
    for cut in enumerate_cuts(g, limit):
        need = min(len(cut), p + 1)
        got = len({colours[e] for e in cut.edges})
        if got < need:
            return CutColouringReport(p, False, cut, got, need)
    return CutColouringReport(p, True)


def arbstar_exact(g: Multigraph, p: int) -> int:
    return arbstar_exact_witness(g, p)[0]


def arbstar_exact_witness(g: Multigraph, p: int) -> tuple[int, list[int]]:
    if p < 1:
        raise ValueError("p must be positive")
    reqs = [Requirement(c.edges, min(len(c), p + 1)) for c in enumerate_cuts(g)]
    return min_palette(g.size, reqs)


def tree_packing(g: Multigraph, k: int) -> list[list[int]] | None:
    """``k`` edge-disjoint spanning trees (edge id lists), or None if there are not that many."""
    if k < 1:
        raise ValueError("k must be positive")
    if not g.is_connected():
        raise ValueError("tree packing needs a connected graph")
    packing = matroid_partition(g, k)
    # A union of k forests with k(n-1) edges consists of k spanning trees.
    if sum(len(f) for f in packing.forests) < k * (g.n - 1):
        return None
    return packing.forests


def edge_connectivity(g: Multigraph) -> int:
    """Minimum cut size, from max-flows between vertex 0 and every other vertex."""
    if g.n < 2:
        return 0
    if not g.is_connected():
        return 0
    net = nx.DiGraph()
    net.add_nodes_from(range(g.n))
    for u in range(g.n):
        for v in range(g.n):
            k = g.mult_rows[u][v]
            if k:
                net.add_edge(u, v, capacity=k)
    return min(nx.maximum_flow_value(net, 0, t) for t in range(1, g.n))


def double_edges(g: Multigraph) -> Multigraph:
    """Edge ``e`` becomes copies ``2e`` and ``2e+1``."""
    return Multigraph(g.n, tuple(e for e in g.edges for _ in range(2)))


@dataclass(frozen=True)
class PackingColouring:
    method: str  # "packing" or "doubling"
    trees: tuple[tuple[int, ...], ...]
    colouring: EdgeColouring
    report: CutColouringReport

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "trees": [list(t) for t in self.trees],
            "colours": list(self.colouring.colours),
            "palette_size": self.colouring.palette_size,
            "report": self.report.to_json(),
        }


def colour_cuts_via_packing(g: Multigraph, p: int) -> PackingColouring | None:
    """Cut colouring from spanning-tree packings, or None when neither construction applies."""
    if p < 1:
        raise ValueError("p must be positive")
    trees = tree_packing(g, p + 1)
    if trees is not None:
        colours = [0] * g.size
        for i, tree in enumerate(trees):
            for e in tree:
                colours[e] = i
        col = EdgeColouring(tuple(colours))
        return PackingColouring("packing", tuple(map(tuple, trees)), col, verify_cut_colouring(g, col, p))
    doubled = double_edges(g)
    trees = tree_packing(doubled, 2 * p + 1)
    if trees is None:
        return None
    copy_colour = [0] * doubled.size
    for i, tree in enumerate(trees):
        for e in tree:
            copy_colour[e] = i
    col = EdgeColouring(tuple(pair_colour_index(copy_colour[2 * e], copy_colour[2 * e + 1]) for e in range(g.size)))
    return PackingColouring("doubling", tuple(map(tuple, trees)), col, verify_cut_colouring(g, col, p))


def ceil_root(x: int, p: int) -> int:
    """Smallest ``N`` with ``N**p >= x``."""
    n = 1
    while n**p < x:
        n += 1
    return n


@dataclass(frozen=True)
class DualRow:
    instance: str
    kind: str  # "multicycle" or "connected"
    edge_connectivity: int
    value: int
    expected_low: int
    expected_high: int | None

    @property
    def holds(self) -> bool:
        return self.value >= self.expected_low and (self.expected_high is None or self.value <= self.expected_high)

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "kind": self.kind,
            "edge_connectivity": self.edge_connectivity,
            "value": self.value,
            "lower": self.expected_low,
            "upper": self.expected_high,
            "holds": self.holds,
        }


def check_dual_proposition(p: int, sizes: Sequence[int] = (3, 4, 5), connected: Sequence[tuple[str, Multigraph]] = ()) -> list[DualRow]:
    """Multicycles ``C_L^(p)`` must need at least ``ceil(L**(1/p))`` colours; graphs
    that are ``(2p+2)``-edge-connected need exactly ``p+1``, and
    ``(2p+1)``-edge-connected ones at most ``(p+1)(2p+1)``."""
    from .generators import gen_multicycle

    rows = []
    for L in sizes:
        g = gen_multicycle(L, p)
        rows.append(DualRow(f"multicycle L={L} p={p}", "multicycle", edge_connectivity(g), arbstar_exact(g, p), ceil_root(L, p), None))
    for name, g in connected:
        lam = edge_connectivity(g)
        if lam >= 2 * p + 2:
            lo, hi = p + 1, p + 1
        elif lam >= 2 * p + 1:
            lo, hi = p + 1, (p + 1) * (2 * p + 1)
        else:
            lo, hi = min(lam, p + 1), None
        rows.append(DualRow(name, "connected", lam, arbstar_exact(g, p), lo, hi))
    return rows
