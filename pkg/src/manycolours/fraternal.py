"""Fraternal completions of oriented multigraphs.

A completion of depth ``a`` stacks arc layers ``E_1..E_a`` on the vertex set
of the base orientation.  ``E_1`` is the base arc set; whenever two arcs
``f, g`` share a head, have distinct tails and ``w(f) + w(g) <= a``, exactly
one arc of weight ``w(f) + w(g)`` joins their tails, and ``kappa`` records the
ordered pair it came from.  Each arc expands to a walk in the base graph, and
conflicts between base arcs are read off short directed paths in the stacked
layers.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

from .density import Orientation, min_indegree_orientation
from .errors import BudgetExceeded
from .multigraph import Multigraph, bits

MAX_LAYER_ARCS = 200_000


@dataclass(frozen=True)
class CompletionArc:
    id: int
    tail: int
    head: int
    weight: int
    kappa: tuple[int, int] | None = None


@dataclass(frozen=True)
class Walk:
    """Base-graph walk; ``steps[i] = (edge, forward)`` moves ``vertices[i] -> vertices[i+1]``."""

    steps: tuple[tuple[int, bool], ...]
    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.steps)

    @property
    def simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.steps)

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def reversed(self) -> Walk:
        return Walk(tuple((e, not fwd) for e, fwd in reversed(self.steps)), self.vertices[::-1])

    def then(self, other: Walk) -> Walk:
        if self.vertices[-1] != other.vertices[0]:
            raise ValueError("walks do not meet")
        return Walk(self.steps + other.steps, self.vertices + other.vertices[1:])


@dataclass(frozen=True)
class FraternalCompletion:
    base: Orientation
    arcs: tuple[CompletionArc, ...]
    layers: tuple[tuple[int, ...], ...]
    # Maximum in-degree of each layer H_i, recorded at construction.
    layer_indegree: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def n(self) -> int:
        return self.base.graph.n

    def layer(self, i: int) -> list[CompletionArc]:
        """Arcs of ``E_i`` (1-based)."""
        return [self.arcs[a] for a in self.layers[i - 1]]

    @cached_property
    def walks(self) -> tuple[Walk, ...]:
        out: list[Walk] = []
        for arc in self.arcs:
            if arc.kappa is None:
                out.append(Walk(((arc.id, True),), (arc.tail, arc.head)))
            else:
                f, g = arc.kappa
                out.append(out[f].then(out[g].reversed()))
        return tuple(out)

    @cached_property
    def base_masks(self) -> tuple[int, ...]:
        """Bitmask over base edges occurring in each arc's walk."""
        out = []
        for w in self.walks:
            mask = 0
            for e, _ in w.steps:
                mask |= 1 << e
            out.append(mask)
        return tuple(out)

    @cached_property
    def covers(self) -> tuple[tuple[int, ...], ...]:
        """``covers[f]``: arcs ``e`` with ``f`` in ``kappa(e)``."""
        up: list[list[int]] = [[] for _ in self.arcs]
        for arc in self.arcs:
            if arc.kappa is not None:
                f, g = arc.kappa
                up[f].append(arc.id)
                up[g].append(arc.id)
        return tuple(tuple(sorted(set(u))) for u in up)

    def indegree_upto(self, i: int | None = None) -> int:
        """Maximum in-degree of ``H_{<=i}`` (all layers when ``i`` is None)."""
        last = self.depth if i is None else i
        deg = [0] * self.n
        for layer in self.layers[:last]:
            for a in layer:
                deg[self.arcs[a].head] += 1
        return max(deg, default=0)

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "vertex_count": self.n,
            "layer_max_indegree": list(self.layer_indegree),
            "layers": [
                [
                    {
                        "id": arc.id,
                        "tail": arc.tail,
                        "head": arc.head,
                        "weight": arc.weight,
                        "kappa": list(arc.kappa) if arc.kappa else None,
                    }
                    for arc in self.layer(i)
                ]
                for i in range(1, self.depth + 1)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def depth1_completion(o: Orientation) -> FraternalCompletion:
    arcs = tuple(CompletionArc(e, o.tail(e), o.head(e), 1) for e in range(o.graph.size))
    return FraternalCompletion(o, arcs, (tuple(range(len(arcs))),), (o.max_indegree,))


def fraternal_pairs(fc: FraternalCompletion, total: int) -> list[tuple[int, int]]:
    """Unordered pairs ``{f, g}`` with a common head, distinct tails and ``w(f)+w(g) == total``."""
    by_head: dict[int, dict[int, list[int]]] = {}
    for arc in fc.arcs:
        by_head.setdefault(arc.head, {}).setdefault(arc.weight, []).append(arc.id)
    pairs = []
    for v in sorted(by_head):
        groups = by_head[v]
        for i in range(1, total // 2 + 1):
            j = total - i
            left, right = groups.get(i, []), groups.get(j, [])
            cands = combinations(left, 2) if i == j else product(left, right)
            for f, g in cands:
                if fc.arcs[f].tail != fc.arcs[g].tail:
                    pairs.append((f, g))
    return pairs


def extend(fc: FraternalCompletion, cap: int = MAX_LAYER_ARCS) -> FraternalCompletion:
    """Add layer ``E_{a+1}``, one arc per fraternal pair of total weight ``a+1``.

    The pairs span an undirected multigraph on the tails; orienting it with
    minimum maximum in-degree decides, for each pair, which tail the new arc
    leaves from and hence the order of ``kappa``.
    """
    a = fc.depth
    pairs = fraternal_pairs(fc, a + 1)
    if len(pairs) > cap:
        raise BudgetExceeded(f"completion layer {a + 1} arcs", cap)
    arcs = fc.arcs
    layer_graph = Multigraph(fc.n, tuple((arcs[f].tail, arcs[g].tail) for f, g in pairs))
    orient = min_indegree_orientation(layer_graph)
    new_arcs = []
    next_id = len(arcs)
    for idx, (f, g) in enumerate(pairs):
        if orient.head(idx) != arcs[g].tail:
            f, g = g, f
        new_arcs.append(CompletionArc(next_id, arcs[f].tail, arcs[g].tail, a + 1, (f, g)))
        next_id += 1
    return FraternalCompletion(
        fc.base,
        arcs + tuple(new_arcs),
        fc.layers + (tuple(arc.id for arc in new_arcs),),
        fc.layer_indegree + (orient.max_indegree,),
    )


def complete_to_depth(o: Orientation, p: int, cap: int = MAX_LAYER_ARCS) -> FraternalCompletion:
    if p < 1:
        raise ValueError("depth must be positive")
    fc = depth1_completion(o)
    while fc.depth < p:
        fc = extend(fc, cap)
    return fc


def walk_of(fc: FraternalCompletion, arc_id: int) -> Walk:
    return fc.walks[arc_id]


def above(fc: FraternalCompletion, e: int) -> frozenset[int]:
    """Arcs ``f`` with ``f >= e`` in the order generated by ``kappa``."""
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for y in fc.covers[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def composition_bound(fc: FraternalCompletion) -> int:
    """``C(f)``: sum over compositions ``(i_1..i_k)`` with sum below the depth of the
    product of layer in-degree maxima; the empty composition contributes 1."""
    a = fc.depth
    deg = (0,) + fc.layer_indegree
    exact = [0] * a
    exact[0] = 1
    for s in range(1, a):
        exact[s] = sum(deg[i] * exact[s - i] for i in range(1, s + 1))
    return sum(exact)


@dataclass(frozen=True)
class ConflictGraph:
    """Conflict relation on base edges.

    ``out[e1]`` has bit ``e2`` set iff ``(e1, e2)`` is a conflict.  ``adj`` is
    its symmetrisation with self-pairs removed; self-conflicts impose nothing
    on a single edge's colour and are listed separately.
    """

    m: int
    out: tuple[int, ...]

    @cached_property
    def into(self) -> tuple[int, ...]:
        masks = [0] * self.m
        for e1, row in enumerate(self.out):
            for e2 in bits(row):
                masks[e2] |= 1 << e1
        return tuple(masks)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        return tuple((self.out[e] | self.into[e]) & ~(1 << e) for e in range(self.m))

    @property
    def self_conflicts(self) -> list[int]:
        return [e for e in range(self.m) if self.out[e] >> e & 1]

    def is_conflict(self, e1: int, e2: int) -> bool:
        return bool(self.out[e1] >> e2 & 1)

    def in_degree(self, e2: int) -> int:
        """Number of ``e1`` with ``(e1, e2)`` a conflict (``e2`` itself included)."""
        return self.into[e2].bit_count()

    def degree(self, e: int) -> int:
        return self.adj[e].bit_count()

    @property
    def max_in_degree(self) -> int:
        return max((self.in_degree(e) for e in range(self.m)), default=0)

    @property
    def max_degree(self) -> int:
        return max((self.degree(e) for e in range(self.m)), default=0)

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.m) for b in bits(self.adj[a]) if a < b]


def conflicts(fc: FraternalCompletion) -> ConflictGraph:
    """All conflicts ``(e1, e2)``: some ``f1 >= e1`` starts a vertex-simple directed
    path of at most ``a`` arcs in ``H_{<=a}`` ending at an endpoint of some ``f2 >= e2``.

    Path length counts arcs, and the one-arc path ``f1`` itself qualifies.
    """
    a = fc.depth
    n = fc.n
    succ = [0] * n
    incident = [0] * n
    for arc, mask in zip(fc.arcs, fc.base_masks):
        succ[arc.tail] |= 1 << arc.head
        incident[arc.tail] |= mask
        incident[arc.head] |= mask
    reach_cache: dict[tuple[int, int], int] = {}

    def targets(tail: int, head: int) -> int:
        key = (tail, head)
        if key not in reach_cache:
            # Shortest walks avoiding ``tail`` are vertex-simple, so plain BFS
            # depth suffices.
            blocked = 1 << tail
            seen = 1 << head
            frontier = seen
            for _ in range(a - 1):
                nxt = 0
                for x in bits(frontier):
                    nxt |= succ[x]
                nxt &= ~seen & ~blocked
                if not nxt:
                    break
                seen |= nxt
                frontier = nxt
            hit = 0
            for x in bits(seen):
                hit |= incident[x]
            reach_cache[key] = hit
        return reach_cache[key]

    out = [0] * fc.base.graph.size
    for arc, mask in zip(fc.arcs, fc.base_masks):
        hit = targets(arc.tail, arc.head)
        for e1 in bits(mask):
            out[e1] |= hit
    return ConflictGraph(len(out), tuple(out))


def conflict_degree_bound(fc: FraternalCompletion) -> int:
    """``3 * a * C(f) * max(2, indeg(H_{<=a}))**a`` for depth ``a``."""
    a = fc.depth
    return 3 * a * composition_bound(fc) * max(2, fc.indegree_upto()) ** a


def audit(fc: FraternalCompletion) -> list[str]:
    """Structural problems with ``fc``; empty when it is a valid fraternal completion."""
    problems = []
    o = fc.base
    base_arcs = [arc for arc in fc.arcs if arc.weight == 1]
    if [(arc.id, arc.tail, arc.head) for arc in base_arcs] != [(e, o.tail(e), o.head(e)) for e in range(o.graph.size)]:
        problems.append("E_1 differs from the base arc set")
    seen_ids = set()
    for i, layer in enumerate(fc.layers, start=1):
        for aid in layer:
            if aid in seen_ids:
                problems.append(f"arc {aid} appears in two layers")
            seen_ids.add(aid)
            if fc.arcs[aid].weight != i:
                problems.append(f"arc {aid} sits in layer {i} with weight {fc.arcs[aid].weight}")
    for arc in fc.arcs:
        if arc.tail == arc.head:
            problems.append(f"arc {arc.id} is a loop")
        if arc.weight == 1:
            if arc.kappa is not None:
                problems.append(f"base arc {arc.id} has kappa")
            continue
        if arc.kappa is None:
            problems.append(f"arc {arc.id} lacks kappa")
            continue
        f, g = (fc.arcs[x] for x in arc.kappa)
        ok = (
            f.tail != g.tail
            and arc.weight == f.weight + g.weight
            and arc.tail == f.tail
            and arc.head == g.tail
            and f.head == g.head
        )
        if not ok:
            problems.append(f"arc {arc.id} violates the kappa conditions")
    by_pair: dict[frozenset, int] = {}
    for arc in fc.arcs:
        if arc.kappa is not None:
            key = frozenset(arc.kappa)
            by_pair[key] = by_pair.get(key, 0) + 1
    expected = set()
    for total in range(2, fc.depth + 1):
        for f, g in fraternal_pairs(fc, total):
            expected.add(frozenset((f, g)))
    for key in expected:
        if by_pair.get(key, 0) != 1:
            problems.append(f"pair {sorted(key)} has {by_pair.get(key, 0)} completion arcs")
    for key in set(by_pair) - expected:
        problems.append(f"completion arc from non-fraternal pair {sorted(key)}")
    return problems
