"""Exact tree-depth, longest cycles, and the DFS cycle family bounding tree height."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import BudgetExceeded
from .multigraph import Multigraph, bits
from .structure import Cycle, cycle_from_edge_set, is_two_connected, iter_cycle_paths

MAX_TD_VERTICES = 16


@dataclass(frozen=True)
class TdDecomposition:
    parent: tuple[int | None, ...]

    @property
    def height(self) -> int:
        best = 0
        for v in range(len(self.parent)):
            depth, x = 1, self.parent[v]
            while x is not None:
                depth += 1
                x = self.parent[x]
            best = max(best, depth)
        return best

    def ancestors(self, v: int) -> set[int]:
        out = set()
        x = self.parent[v]
        while x is not None:
            out.add(x)
            x = self.parent[x]
        return out

    def is_valid_for(self, g: Multigraph) -> bool:
        if len(self.parent) != g.n:
            return False
        for v in range(g.n):
            chain = {v}
            x = self.parent[v]
            while x is not None:
                if x in chain:
                    return False
                chain.add(x)
                x = self.parent[x]
        return all(u in self.ancestors(v) or v in self.ancestors(u) for u, v in g.edges)


class TreedepthOracle:
    """Tree-depth of induced subgraphs ``G[mask]``, memoised across queries."""

    def __init__(self, g: Multigraph, limit: int = MAX_TD_VERTICES):
        if g.n > limit:
            raise BudgetExceeded("tree-depth vertices", limit)
        self.g = g
        # connected mask -> (tree-depth, a root achieving it)
        self.memo: dict[int, tuple[int, int]] = {}

    def value(self, mask: int) -> int:
        if not mask:
            return 0
        comps = self.g.components(mask)
        if len(comps) > 1:
            return max(self.value(c) for c in comps)
        if mask in self.memo:
            return self.memo[mask][0]
        if mask & (mask - 1) == 0:
            self.memo[mask] = (1, mask.bit_length() - 1)
            return 1
        best = None
        for v in bits(mask):
            val = 1 + self.value(mask & ~(1 << v))
            if best is None or val < best[0]:
                best = (val, v)
                if val == 2:  # a connected graph with an edge cannot do better
                    break
        self.memo[mask] = best
        return best[0]

    def decomposition(self, mask: int | None = None) -> TdDecomposition:
        """Optimal elimination forest of ``G[mask]``; vertices outside ``mask`` stay roots."""
        g = self.g
        parent: list[int | None] = [None] * g.n

        def build(sub: int, above: int | None):
            for comp in g.components(sub):
                self.value(comp)
                root = self.memo[comp][1]
                parent[root] = above
                build(comp & ~(1 << root), root)

        build(g.full_mask if mask is None else mask, None)
        return TdDecomposition(tuple(parent))


def treedepth_exact(g: Multigraph, limit: int = MAX_TD_VERTICES) -> tuple[int, TdDecomposition]:
    """Tree-depth by the elimination recursion, memoised on vertex bitmasks."""
    oracle = TreedepthOracle(g, limit)
    return oracle.value(g.full_mask), oracle.decomposition()


def longest_cycle(g: Multigraph) -> int:
    return max((len(es) for _, es in iter_cycle_paths(g)), default=0)


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("log of a nonpositive number")
    return (x - 1).bit_length()


# -- DFS cycle family ----------------------------------------------------------


@dataclass(frozen=True)
class CycleFamily:
    tree_parent: tuple[int | None, ...]
    tree_edge: tuple[int, ...]  # edge to the parent, -1 at the root
    path: tuple[int, ...]  # v_1 (root) .. v_h
    a: tuple[int, ...]  # 1-based indices into path
    b: tuple[int, ...]
    cotree_edges: tuple[int, ...]
    fundamental: tuple[Cycle, ...]
    symmetric_difference: Cycle
    # rule used to pick each cotree edge's lower end: "least-vertex" or "shallowest"
    rule: str = "least-vertex"

    @property
    def k(self) -> int:
        return len(self.fundamental)

    @property
    def tree_path_length(self) -> int:
        return len(self.path)

    def path_edges(self, g: Multigraph) -> list[int]:
        return [self.tree_edge[v] for v in self.path[1:]]

    def cover_counts(self, g: Multigraph) -> dict[int, int]:
        """For each edge of the path and the cotree edges, the number of family cycles through it."""
        cycles = [set(c.edges) for c in self.fundamental] + [set(self.symmetric_difference.edges)]
        return {e: sum(e in c for c in cycles) for e in self.path_edges(g) + list(self.cotree_edges)}

    def double_cover(self, g: Multigraph) -> bool:
        return all(c == 2 for c in self.cover_counts(g).values())

    def length_sum(self) -> int:
        return sum(len(c) for c in self.fundamental) + len(self.symmetric_difference)


def dfs_tree(g: Multigraph, root: int = 0) -> tuple[list[int | None], list[int], list[int]]:
    """DFS from ``root`` taking the smallest unvisited neighbour first.

    Returns the parent array, the depth array (root has depth 1) and, per
    vertex, the id of its tree edge (-1 for the root).
    """
    parent: list[int | None] = [None] * g.n
    depth = [0] * g.n
    tree_edge = [-1] * g.n
    depth[root] = 1
    stack = [root]
    visited = {root}
    while stack:
        x = stack[-1]
        nxt = None
        for e, w in sorted(g.incidence[x], key=lambda t: (t[1], t[0])):
            if w not in visited:
                nxt = (e, w)
                break
        if nxt is None:
            stack.pop()
            continue
        e, w = nxt
        visited.add(w)
        parent[w] = x
        depth[w] = depth[x] + 1
        tree_edge[w] = e
        stack.append(w)
    return parent, depth, tree_edge


def dfs_cycle_family(g: Multigraph) -> CycleFamily:
    """Cycles ``gamma_1..gamma_k`` along a deepest DFS branch and their symmetric difference.

    Every edge of the branch and every chosen cotree edge lies on exactly two
    of the ``k + 1`` cycles, which yields ``2(h + k - 1) <= sum of lengths``.
    """
    if not is_two_connected(g):
        raise ValueError("the cycle family needs a 2-connected graph")
    parent, depth, tree_edge = dfs_tree(g)
    tree_edges = set(tree_edge) - {-1}
    n = g.n

    def is_ancestor(x: int, y: int) -> bool:  # x weakly above y
        while y is not None:
            if y == x:
                return True
            y = parent[y]
        return False

    # Back edges as (lower, upper) with upper an ancestor of lower.
    back = []
    for e, (u, v) in enumerate(g.edges):
        if e in tree_edges:
            continue
        lo, hi = (u, v) if depth[u] > depth[v] else (v, u)
        back.append((e, lo, hi))
    low = [None] * n
    for e, lo, hi in back:
        x = lo
        while x is not None:
            if low[x] is None or depth[hi] < depth[low[x]]:
                low[x] = hi
            x = parent[x]

    leaf = min(range(n), key=lambda v: (-depth[v], v))
    path = []
    x = leaf
    while x is not None:
        path.append(x)
        x = parent[x]
    path.reverse()
    h = len(path)
    pos = {v: i + 1 for i, v in enumerate(path)}

    a = [h]
    b = [pos[low[path[-1]]]]
    while b[-1] != 1:
        ai, bi = a[-1], b[-1]
        between = range(bi + 1, ai)
        nb = min(pos[low[path[j - 1]]] for j in between)
        na = max(j for j in between if pos[low[path[j - 1]]] == nb)
        a.append(na)
        b.append(nb)

    rules = (("least-vertex", min), ("shallowest", lambda ws: min(ws, key=lambda w: (depth[w], w))))
    for rule, chooser in rules:
        cot, fund = [], []
        for ai, bi in zip(a, b):
            top = path[bi - 1]
            cands = {}
            for e, lo, hi in back:
                if hi == top and is_ancestor(path[ai - 1], lo):
                    cands.setdefault(lo, e)
            w = chooser(list(cands))
            e = min(ed for ed, lo, hi in back if lo == w and hi == top)
            cot.append(e)
            edges = [e]
            y = w
            while y != top:
                edges.append(tree_edge[y])
                y = parent[y]
            fund.append(cycle_from_edge_set(g, edges))
        sym: set[int] = set()
        for c in fund:
            sym ^= set(c.edges)
        gamma = cycle_from_edge_set(g, sym)
        if gamma is None:
            continue
        fam = CycleFamily(tuple(parent), tuple(tree_edge), tuple(path), tuple(a), tuple(b), tuple(cot), tuple(fund), gamma, rule)
        if fam.double_cover(g):
            return fam
    raise AssertionError("no choice of cotree edges gives a double cover")


@dataclass(frozen=True)
class TdBoundsReport:
    L: int
    td: int
    lower: int
    upper: int
    decomposition: TdDecomposition

    @property
    def holds(self) -> bool:
        return self.lower <= self.td <= self.upper

    def to_json(self) -> dict:
        return {
            "longest_cycle": self.L,
            "treedepth": self.td,
            "lower_bound": self.lower,
            "upper_bound": self.upper,
            "lower_slack": self.td - self.lower,
            "upper_slack": self.upper - self.td,
            "holds": self.holds,
            "forest_parent": list(self.decomposition.parent),
        }


def td_cycle_bounds(L: int) -> tuple[int, int]:
    """``(1 + ceil(log2 L), C(L-1, 2) + 2)``."""
    return 1 + ceil_log2(L), comb(L - 1, 2) + 2


def check_td_cycle_bounds(g: Multigraph) -> TdBoundsReport:
    if not is_two_connected(g):
        raise ValueError("the cycle-length bounds apply to 2-connected graphs")
    L = longest_cycle(g)
    td, dec = treedepth_exact(g)
    lo, hi = td_cycle_bounds(L)
    return TdBoundsReport(L, td, lo, hi, dec)


def closure_long_cycle(q: int, p: int, length: int | None = None) -> Cycle | None:
    """A cycle of ``length`` (default ``2**(p-1)``) in the closure of the complete ``q``-ary tree of height ``p``."""
    from .generators import gen_tree_closure

    g = gen_tree_closure(q, p)
    want = 2 ** (p - 1) if length is None else length
    for vs, es in iter_cycle_paths(g, max_len=want):
        if len(es) == want:
            return Cycle.canonical(vs, es)
    return None
