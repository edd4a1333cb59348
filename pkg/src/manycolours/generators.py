"""Graph operators (blow-up, subdivision) and instance families."""

from __future__ import annotations

import random
from typing import Mapping, Sequence

from .errors import BudgetExceeded
from .multigraph import Multigraph

MAX_CLOSURE_VERTICES = 4096


def blow_up(g: Multigraph, m: int) -> Multigraph:
    """Replace every vertex by ``m`` twins; ``(x, i)`` becomes vertex ``x*m + i``.

    Each edge ``{x, y}`` yields ``m*m`` edges ``{(x,i), (y,j)}``, so pair
    multiplicities carry over unchanged.
    """
    if m < 1:
        raise ValueError("blow-up factor must be positive")
    edges = [(x * m + i, y * m + j) for x, y in g.edges for i in range(m) for j in range(m)]
    return Multigraph(g.n * m, tuple(edges))


def subdivide(g: Multigraph, times_per_edge: Mapping[int, int] | Sequence[int]) -> Multigraph:
    """Replace edge ``e`` by a path with ``times_per_edge[e]`` new interior vertices.

    Original vertices keep their ids; new vertices are numbered from ``g.n``
    upward in edge order.
    """
    if isinstance(times_per_edge, Mapping):
        times = [times_per_edge.get(e, 0) for e in range(g.size)]
    else:
        times = list(times_per_edge)
        if len(times) != g.size:
            raise ValueError("need one subdivision count per edge")
    n = g.n
    edges = []
    for (u, v), t in zip(g.edges, times):
        if t < 0:
            raise ValueError("subdivision counts must be nonnegative")
        prev = u
        for _ in range(t):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, v))
    return Multigraph(n, tuple(edges))


def path_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def star_graph(leaves: int) -> Multigraph:
    return Multigraph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def multi_edge(k: int) -> Multigraph:
    """Two vertices joined by ``k`` parallel edges."""
    return Multigraph(2, ((0, 1),) * k)


def theta_graph(k: int, length: int) -> Multigraph:
    """Two poles 0 and 1 joined by ``k`` internally disjoint paths of ``length`` edges."""
    if length < 1:
        raise ValueError("path length must be positive")
    n = 2
    edges = []
    for _ in range(k):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return Multigraph(n, tuple(edges))


def bowtie() -> Multigraph:
    return Multigraph(5, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)))


def gen_multicycle(L: int, p: int) -> Multigraph:
    """``C_L^(p)``: an ``L``-cycle with every edge replaced by ``p`` parallel edges."""
    if L < 3 or p < 1:
        raise ValueError("need L >= 3 and p >= 1")
    return Multigraph(L, tuple((i, (i + 1) % L) for i in range(L) for _ in range(p)))


def complete_tree_parents(q: int, height: int, limit: int = MAX_CLOSURE_VERTICES) -> list[int | None]:
    """Parent array of the complete ``q``-ary tree with ``height`` levels, BFS numbered."""
    if q < 1 or height < 1:
        raise ValueError("need q >= 1 and height >= 1")
    total = height if q == 1 else (q**height - 1) // (q - 1)
    if total > limit:
        raise BudgetExceeded("tree closure vertices", limit)
    parents: list[int | None] = [None]
    level = [0]
    for _ in range(height - 1):
        nxt = []
        for v in level:
            for _ in range(q):
                parents.append(v)
                nxt.append(len(parents) - 1)
        level = nxt
    return parents


def closure_of_forest(parents: Sequence[int | None]) -> Multigraph:
    """Ancestor/descendant comparability graph of a rooted forest."""
    edges = []
    for v, p in enumerate(parents):
        while p is not None:
            edges.append((p, v))
            p = parents[p]
    return Multigraph(len(parents), tuple(edges))


def gen_tree_closure(q: int, p: int, limit: int = MAX_CLOSURE_VERTICES) -> Multigraph:
    """Closure of the complete ``q``-ary tree of height ``p`` (tree-depth exactly ``p``)."""
    return closure_of_forest(complete_tree_parents(q, p, limit))


def random_multigraph(n: int, m: int, seed: int) -> Multigraph:
    """``m`` edges with uniform endpoints, loops rejected; reproducible from ``seed``."""
    if n < 2 and m > 0:
        raise ValueError("need two vertices to place an edge")
    rng = random.Random(seed)
    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v))
    return Multigraph(n, tuple(edges))
