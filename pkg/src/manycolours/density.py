"""Exact densities, forest partitions and minimum in-degree orientations.

Two density conventions are kept apart:

* ``max_density_subgraph``: max ``||G[A]|| / |A|`` over nonempty ``A``.
* ``arboricity``: max ``ceil(||G[A]|| / (|A| - 1))`` over ``|A| > 1`` (Nash-Williams).

The exhaustive ``*_bruteforce`` functions are independent oracles for tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

import networkx as nx

from .errors import BudgetExceeded
from .multigraph import Multigraph, bits

BRUTEFORCE_MAX_VERTICES = 20


@dataclass(frozen=True)
class DensityWitness:
    vertex_set: tuple[int, ...]
    edges: int
    denominator: int
    value: Fraction

    @classmethod
    def density(cls, g: Multigraph, mask: int) -> DensityWitness:
        vs = tuple(bits(mask))
        e = g.induced_size(mask)
        return cls(vs, e, len(vs), Fraction(e, len(vs)))

    @classmethod
    def forest_ratio(cls, g: Multigraph, mask: int) -> DensityWitness:
        vs = tuple(bits(mask))
        e = g.induced_size(mask)
        return cls(vs, e, len(vs) - 1, Fraction(e, len(vs) - 1))

    def check(self, g: Multigraph) -> bool:
        mask = sum(1 << v for v in self.vertex_set)
        return g.induced_size(mask) == self.edges and Fraction(self.edges, self.denominator) == self.value


@dataclass(frozen=True)
class Orientation:
    """Direction for every edge: edge ``e`` becomes the arc ``tail(e) -> heads[e]``."""

    graph: Multigraph
    heads: tuple[int, ...]

    def __post_init__(self):
        if len(self.heads) != self.graph.size:
            raise ValueError("one head per edge required")
        for e, h in enumerate(self.heads):
            if h not in self.graph.edges[e]:
                raise ValueError(f"head of edge {e} is not one of its endpoints")

    def head(self, e: int) -> int:
        return self.heads[e]

    def tail(self, e: int) -> int:
        return self.graph.other(e, self.heads[e])

    def arcs(self) -> list[tuple[int, int]]:
        return [(self.tail(e), h) for e, h in enumerate(self.heads)]

    def indegrees(self) -> list[int]:
        deg = [0] * self.graph.n
        for h in self.heads:
            deg[h] += 1
        return deg

    @property
    def max_indegree(self) -> int:
        return max(self.indegrees(), default=0)


# -- maximum density ---------------------------------------------------------


def _max_excess_set(g: Multigraph, lam: Fraction, force: int | None = None) -> int:
    """Minimal maximiser of ``e(A) - lam*|A|`` (containing ``force`` if given), as a bitmask.

    Goldberg's cut construction with capacities scaled by ``lam``'s
    denominator, so the flow computation stays in integers.
    """
    num, den = lam.numerator, lam.denominator
    big = den * g.size
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for v in range(g.n):
        if v == force:
            net.add_edge("s", v)
        else:
            net.add_edge("s", v, capacity=big)
        net.add_edge(v, "t", capacity=big + 2 * num - den * g.degree(v))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            k = g.mult_rows[u][v]
            if k:
                net.add_edge(u, v, capacity=den * k)
                net.add_edge(v, u, capacity=den * k)
    _, flow = nx.maximum_flow(net, "s", "t")
    # nx.minimum_cut reports the maximal source side; the minimal one is what
    # the residual network reaches from the source.
    seen = {"s"}
    queue = deque(["s"])
    while queue:
        x = queue.popleft()
        for y, attrs in net[x].items():
            cap = attrs.get("capacity")
            if y not in seen and (cap is None or flow[x][y] < cap):
                seen.add(y)
                queue.append(y)
        for y in net.predecessors(x):
            if y not in seen and flow[y][x] > 0:
                seen.add(y)
                queue.append(y)
    return sum(1 << v for v in seen if isinstance(v, int))


def max_density_subgraph(g: Multigraph) -> DensityWitness:
    """Exact ``max ||G[A]||/|A|`` with the smallest (then lexicographically least) maximiser."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if g.size == 0:
        return DensityWitness.density(g, 1)
    lam = Fraction(g.size, g.n)
    while True:
        mask = _max_excess_set(g, lam)
        if not mask:
            break
        e = g.induced_size(mask)
        k = mask.bit_count()
        if Fraction(e, k) <= lam:
            break
        lam = Fraction(e, k)
    best = None
    for v in range(g.n):
        mask = _max_excess_set(g, lam, force=v)
        if Fraction(g.induced_size(mask), mask.bit_count()) != lam:
            continue
        key = (mask.bit_count(), bits(mask))
        if best is None or key < best[0]:
            best = (key, mask)
    return DensityWitness.density(g, best[1])


def max_density_bruteforce(g: Multigraph) -> DensityWitness:
    if g.n > BRUTEFORCE_MAX_VERTICES:
        raise BudgetExceeded("exhaustive subset search", BRUTEFORCE_MAX_VERTICES)
    best = None
    for mask in range(1, 1 << g.n):
        val = Fraction(g.induced_size(mask), mask.bit_count())
        key = (-val, mask.bit_count(), bits(mask))
        if best is None or key < best[0]:
            best = (key, mask)
    return DensityWitness.density(g, best[1])


# -- forests -------------------------------------------------------------------


def _forest_path(adj: list[list[tuple[int, int]]], u: int, v: int) -> list[int] | None:
    """Edge ids of the ``u``-``v`` path in a forest, or None if disconnected."""
    prev: dict[int, tuple[int, int]] = {u: (-1, -1)}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for w, e in adj[x]:
            if w not in prev:
                prev[w] = (x, e)
                queue.append(w)
    if v not in prev:
        return None
    path = []
    x = v
    while x != u:
        x, e = prev[x]
        path.append(e)
    return path


@dataclass
class ForestPacking:
    forests: list[list[int]]
    unplaced: list[int]
    # Vertex set certifying failure for the first unplaced edge: it spans more
    # than k*(|A|-1) edges.
    witness: int | None


def matroid_partition(g: Multigraph, k: int) -> ForestPacking:
    """Greedy matroid-union insertion of every edge into ``k`` forests.

    Each edge is inserted along a shortest augmenting path through the
    exchange graph; edges that cannot be inserted are left out, so the placed
    edges form a maximum-size union of ``k`` forests.
    """
    m = g.size
    assign: list[int | None] = [None] * m
    forests: list[set[int]] = [set() for _ in range(k)]
    unplaced: list[int] = []
    witness = None
    for x in range(m):
        adj = []
        for forest in forests:
            rows: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
            for e in forest:
                a, b = g.edges[e]
                rows[a].append((b, e))
                rows[b].append((a, e))
            adj.append(rows)
        label: dict[int, tuple[int, int] | None] = {x: None}
        queue = deque([x])
        placed = False
        while queue and not placed:
            y = queue.popleft()
            u, v = g.edges[y]
            for i in range(k):
                if assign[y] == i:
                    continue
                path = _forest_path(adj[i], u, v)
                if path is None:
                    cur, target = y, i
                    while True:
                        old = assign[cur]
                        if old is not None:
                            forests[old].discard(cur)
                        forests[target].add(cur)
                        assign[cur] = target
                        lab = label[cur]
                        if lab is None:
                            break
                        cur, target = lab
                    placed = True
                    break
                for z in path:
                    if z not in label:
                        label[z] = (y, i)
                        queue.append(z)
        if not placed:
            unplaced.append(x)
            if witness is None:
                witness = _dense_component(g, list(label), k)
    return ForestPacking([sorted(f) for f in forests], unplaced, witness)


def _dense_component(g: Multigraph, edge_ids: list[int], k: int) -> int:
    """A component of the edge set whose vertex set spans more than k(|C|-1) edges."""
    sub_mask = 0
    for e in edge_ids:
        a, b = g.edges[e]
        sub_mask |= 1 << a | 1 << b
    parent = {v: v for v in bits(sub_mask)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_ids:
        a, b = g.edges[e]
        parent[find(a)] = find(b)
    comps: dict[int, int] = {}
    for v in parent:
        comps[find(v)] = comps.get(find(v), 0) | 1 << v
    for comp in sorted(comps.values(), key=lambda c: (c.bit_count(), bits(c))):
        if g.induced_size(comp) > k * (comp.bit_count() - 1):
            return comp
    raise AssertionError("matroid partition failed without a dense witness")


def forest_partition(g: Multigraph, k: int) -> list[list[int]] | None:
    """Partition of the edges into ``k`` forests, or None if arboricity exceeds ``k``."""
    packing = matroid_partition(g, k)
    if packing.unplaced:
        return None
    return packing.forests


def arboricity(g: Multigraph) -> tuple[int, DensityWitness]:
    if g.size == 0:
        raise ValueError("arboricity needs at least one edge")
    k = 1
    witness_mask = mask_for_edge(g, 0)
    while True:
        packing = matroid_partition(g, k)
        if not packing.unplaced:
            return k, DensityWitness.forest_ratio(g, witness_mask)
        witness_mask = packing.witness
        k += 1


def mask_for_edge(g: Multigraph, e: int) -> int:
    a, b = g.edges[e]
    return 1 << a | 1 << b


def arboricity_bruteforce(g: Multigraph) -> int:
    if g.n > BRUTEFORCE_MAX_VERTICES:
        raise BudgetExceeded("exhaustive subset search", BRUTEFORCE_MAX_VERTICES)
    best = 0
    for mask in range(1, 1 << g.n):
        k = mask.bit_count()
        if k > 1:
            best = max(best, ceil(Fraction(g.induced_size(mask), k - 1)))
    return best


def is_forest(g: Multigraph, edge_ids) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_ids:
        a, b = (find(x) for x in g.edges[e])
        if a == b:
            return False
        parent[a] = b
    return True


# -- orientations ------------------------------------------------------------


def min_indegree_orientation(g: Multigraph, initial: Orientation | None = None) -> Orientation:
    """Orientation whose maximum in-degree is ``ceil(max_density_subgraph(g))``.

    Starts from ``initial`` (default: every edge as listed, ``u -> v``) and
    reverses a directed path from a vertex of in-degree at most ``D - 2`` into
    a vertex of in-degree ``D`` until no such path exists.
    """
    heads = list(initial.heads) if initial is not None else [v for _, v in g.edges]
    tails = [g.other(e, h) for e, h in enumerate(heads)]
    indeg = [0] * g.n
    in_arcs: list[set[int]] = [set() for _ in range(g.n)]
    for e, h in enumerate(heads):
        indeg[h] += 1
        in_arcs[h].add(e)
    while True:
        top = max(indeg, default=0)
        if top <= 1:
            break
        improved = False
        for y in range(g.n):
            if indeg[y] != top:
                continue
            via = {y: None}
            queue = deque([y])
            found = None
            while queue and found is None:
                cur = queue.popleft()
                for e in sorted(in_arcs[cur]):
                    t = tails[e]
                    if t in via:
                        continue
                    via[t] = (e, cur)
                    if indeg[t] <= top - 2:
                        found = t
                        break
                    queue.append(t)
            if found is None:
                continue
            x = found
            while x != y:
                e, nxt = via[x]
                in_arcs[nxt].discard(e)
                in_arcs[x].add(e)
                heads[e], tails[e] = x, nxt
                x = nxt
            indeg[found] += 1
            indeg[y] -= 1
            improved = True
            break
        if not improved:
            break
    return Orientation(g, tuple(heads))
