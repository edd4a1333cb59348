"""Loopless multigraphs with stable edge identities.

Vertices are ``0..n-1`` and edges are ``0..m-1``; two parallel edges are two
distinct edge ids sharing the same endpoint pair.  Graph values are immutable,
and derived views (incidence lists, adjacency bitmasks) are computed once and
cached on the instance.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for idx, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {idx} has endpoint outside [0, {self.n})")
            if u == v:
                raise ValueError(f"edge {idx} is a loop at vertex {u}")

    # -- sizes --------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.n

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.size})"

    # -- cached views -------------------------------------------------------

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(edge id, other endpoint)`` pairs sorted by edge id."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append((e, v))
            inc[v].append((e, u))
        return tuple(tuple(row) for row in inc)

    @cached_property
    def nbr_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def _pair_count(self) -> Counter:
        return Counter((min(u, v), max(u, v)) for u, v in self.edges)

    @cached_property
    def _pair_masks(self) -> tuple[tuple[int, int], ...]:
        return tuple((1 << u | 1 << v, k) for (u, v), k in sorted(self._pair_count.items()))

    @cached_property
    def mult_rows(self) -> tuple[tuple[int, ...], ...]:
        """Dense multiplicity matrix."""
        rows = [[0] * self.n for _ in range(self.n)]
        for (u, v), k in self._pair_count.items():
            rows[u][v] = k
            rows[v][u] = k
        return tuple(tuple(r) for r in rows)

    # -- queries ------------------------------------------------------------

    def multiplicity(self, u: int, v: int) -> int:
        return self._pair_count.get((min(u, v), max(u, v)), 0)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"vertex {v} is not an endpoint of edge {e}")

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e, w in self.incidence[u] if w == v]

    def induced_size(self, mask: int) -> int:
        """Number of edges (with multiplicity) with both endpoints in ``mask``."""
        return sum(k for pair, k in self._pair_masks if pair & mask == pair)

    def crossing_edges(self, mask: int) -> tuple[int, ...]:
        return tuple(e for e, (u, v) in enumerate(self.edges) if (mask >> u & 1) != (mask >> v & 1))

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``mask``, as bitmasks."""
        if mask is None:
            mask = self.full_mask
        nbr = self.nbr_mask
        comps = []
        rest = mask
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                new = nbr[bit.bit_length() - 1] & mask & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- derived graphs -----------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> Multigraph:
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return Multigraph(
            len(keep),
            tuple((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def edge_subgraph(self, edge_ids: Iterable[int]) -> tuple[Multigraph, tuple[int, ...]]:
        """Subgraph spanned by ``edge_ids``; returns it with its vertex labels in ``self``."""
        eids = sorted(set(edge_ids))
        keep = sorted({x for e in eids for x in self.edges[e]})
        index = {v: i for i, v in enumerate(keep)}
        sub = Multigraph(len(keep), tuple((index[self.edges[e][0]], index[self.edges[e][1]]) for e in eids))
        return sub, tuple(keep)

    def simplify(self) -> Multigraph:
        pairs = sorted(self._pair_count)
        return Multigraph(self.n, tuple(pairs))

    def is_simple(self) -> bool:
        return all(k == 1 for k in self._pair_count.values())

    def delete_edge(self, e: int) -> Multigraph:
        return Multigraph(self.n, self.edges[:e] + self.edges[e + 1 :])

    def contract_edge(self, e: int) -> Multigraph:
        """Contract edge ``e``; the surviving parallel copies become loops and are dropped."""
        a, b = self.edges[e]
        keep, gone = min(a, b), max(a, b)

        def relabel(x: int) -> int:
            if x == gone:
                x = keep
            return x - 1 if x > gone else x

        new_edges = []
        for u, v in self.edges:
            u2, v2 = relabel(u), relabel(v)
            if u2 != v2:
                new_edges.append((u2, v2))
        return Multigraph(self.n - 1, tuple(new_edges))

    def disjoint_union(self, other: Multigraph) -> Multigraph:
        shift = self.n
        return Multigraph(self.n + other.n, self.edges + tuple((u + shift, v + shift) for u, v in other.edges))


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def from_pairs(n: int, pairs: Sequence[tuple[int, int]]) -> Multigraph:
    return Multigraph(n, tuple(pairs))
