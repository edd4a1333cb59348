"""Cycle and cut enumeration, and the block decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceeded
from .multigraph import Multigraph, bits

MAX_CYCLES = 10**6
MAX_BIPARTITIONS = 2**20


@dataclass(frozen=True)
class Cycle:
    """A simple cycle: ``edges[i]`` joins ``vertices[i]`` and ``vertices[i+1]`` (cyclically)."""

    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.edges)

    @classmethod
    def canonical(cls, vertices, edges) -> Cycle:
        """Normalise to the lexicographically least rotation/reflection of the edge sequence."""
        k = len(edges)
        vs, es = list(vertices), list(edges)
        rv = [vs[0]] + vs[:0:-1]
        re_ = es[::-1]
        best = None
        for seq_v, seq_e in ((vs, es), (rv, re_)):
            for i in range(k):
                cand = (tuple(seq_e[i:] + seq_e[:i]), tuple(seq_v[i:] + seq_v[:i]))
                if best is None or cand < best:
                    best = cand
        return cls(edges=best[0], vertices=best[1])

    def is_valid_in(self, g: Multigraph) -> bool:
        k = len(self.edges)
        if k < 2 or len(set(self.edges)) != k or len(set(self.vertices)) != k:
            return False
        for i, e in enumerate(self.edges):
            a, b = self.vertices[i], self.vertices[(i + 1) % k]
            if sorted(g.edges[e]) != sorted((a, b)):
                return False
        return True


@dataclass(frozen=True)
class Cut:
    side: frozenset[int]
    edges: tuple[int, ...]

    def __len__(self):
        return len(self.edges)


def iter_cycle_paths(g: Multigraph, max_len: int | None = None, limit: int = MAX_CYCLES) -> Iterator[tuple[list[int], list[int]]]:
    """Raw backtracking over simple cycles, each yielded once as ``(vertices, edges)``.

    The start vertex is the cycle's smallest vertex and, of the two traversal
    directions, the one whose first edge id is smaller than its closing edge id
    is kept.  The lists are reused between yields; copy them if kept.
    """
    cap = g.n if max_len is None else min(max_len, max(g.n, 2))
    if cap < 2:
        return
    inc = g.incidence
    count = 0
    for s in range(g.n):
        vs = [s]
        es: list[int] = []
        on_path = 1 << s
        stack = [iter(inc[s])]
        while stack:
            advanced = False
            for e, w in stack[-1]:
                if w == s:
                    if es and e != es[0] and es[0] < e:
                        count += 1
                        if count > limit:
                            raise BudgetExceeded("cycle enumeration", limit)
                        es.append(e)
                        yield vs, es
                        es.pop()
                    continue
                if w < s or on_path >> w & 1 or len(es) + 2 > cap:
                    continue
                vs.append(w)
                es.append(e)
                on_path |= 1 << w
                stack.append(iter(inc[w]))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if es:
                    es.pop()
                    on_path &= ~(1 << vs.pop())


def enumerate_cycles(g: Multigraph, max_len: int | None = None, limit: int = MAX_CYCLES) -> Iterator[Cycle]:
    """Every simple cycle of ``g`` once, 2-cycles from parallel edges included."""
    for vs, es in iter_cycle_paths(g, max_len, limit):
        yield Cycle.canonical(vs, es)


def cycle_edge_sets(g: Multigraph, max_len: int | None = None, limit: int = MAX_CYCLES) -> list[tuple[int, ...]]:
    return [tuple(es) for _, es in iter_cycle_paths(g, max_len, limit)]


def enumerate_cuts(g: Multigraph, limit: int = MAX_BIPARTITIONS) -> Iterator[Cut]:
    """One cut per unordered bipartition; ``side`` always contains vertex 0."""
    if g.n < 2:
        return
    if not g.is_connected():
        raise ValueError("cut enumeration requires a connected graph")
    total = (1 << (g.n - 1)) - 1
    if total > limit:
        raise BudgetExceeded("bipartition enumeration", limit)
    full = g.full_mask
    for rest in range(1 << (g.n - 1)):
        side = 1 | (rest << 1)
        if side == full:
            continue
        yield Cut(frozenset(bits(side)), g.crossing_edges(side))


def cut_edge_sets(g: Multigraph, limit: int = MAX_BIPARTITIONS) -> list[tuple[int, ...]]:
    return [c.edges for c in enumerate_cuts(g, limit)]


def block_edge_sets(g: Multigraph) -> list[list[int]]:
    """Edge sets of the blocks (maximal 2-connected pieces and bridges)."""
    n = g.n
    inc = g.incidence
    disc = [-1] * n
    low = [0] * n
    clock = 0
    estack: list[int] = []
    out: list[list[int]] = []
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(inc[root]))]
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for e, w in it:
                if e == parent_edge:
                    continue
                if disc[w] == -1:
                    estack.append(e)
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, iter(inc[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(e)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        x = estack.pop()
                        comp.append(x)
                        if x == parent_edge:
                            break
                    out.append(sorted(comp))
    out.sort()
    return out


def blocks(g: Multigraph) -> list[Multigraph]:
    return [g.edge_subgraph(es)[0] for es in block_edge_sets(g)]


def is_two_connected(g: Multigraph) -> bool:
    """True for a connected graph with a cycle and no cut vertex (a digon counts)."""
    if g.n < 2 or g.size < 2 or not g.is_connected():
        return False
    return len(block_edge_sets(g)) == 1


def cycle_from_edge_set(g: Multigraph, edge_ids) -> Cycle | None:
    """The cycle formed by ``edge_ids``, or None if they do not form exactly one cycle."""
    eids = sorted(set(edge_ids))
    if len(eids) < 2:
        return None
    touching: dict[int, list[int]] = {}
    for e in eids:
        for x in g.edges[e]:
            touching.setdefault(x, []).append(e)
    if any(len(v) != 2 for v in touching.values()):
        return None
    start = min(touching)
    vs, es = [start], []
    prev_edge = None
    cur = start
    while True:
        a, b = touching[cur]
        e = a if a != prev_edge else b
        if es and e == es[0]:
            break
        es.append(e)
        cur = g.other(e, cur)
        prev_edge = e
        if cur == start:
            break
        vs.append(cur)
    if len(es) != len(eids):
        return None
    return Cycle.canonical(vs, es)
