"""Edge colourings where every cycle sees many colours.

``colour_arbp`` is the constructive route: orient with minimum in-degree,
build a fraternal completion of depth ``p``, and colour the conflict graph
greedily.  Every colouring it produces is checked by ``verify_colouring``
before being returned.  The ``*_exact`` functions are exhaustive oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .density import Orientation, min_indegree_orientation
from .errors import InvariantViolation
from .fraternal import ConflictGraph, FraternalCompletion, complete_to_depth, conflict_degree_bound, conflicts
from .multigraph import Multigraph, bits
from .search import Requirement, min_palette
from .shallow import SubdivisionEmbedding, max_pattern_arboricity, mtrdens
from .structure import MAX_CYCLES, Cycle, iter_cycle_paths


@dataclass(frozen=True)
class EdgeColouring:
    colours: tuple[int, ...]

    @property
    def palette_size(self) -> int:
        return len(set(self.colours))

    def __len__(self):
        return len(self.colours)


@dataclass(frozen=True)
class ValidityReport:
    parameter_p: int
    valid: bool
    violating_cycle: Cycle | None = None
    colours_on_cycle: int = 0
    required: int = 0

    def to_json(self) -> dict:
        out = {"p": self.parameter_p, "valid": self.valid}
        if self.violating_cycle is not None:
            out["violating_cycle"] = {
                "edges": list(self.violating_cycle.edges),
                "vertices": list(self.violating_cycle.vertices),
                "colours": self.colours_on_cycle,
                "required": self.required,
            }
        return out


def verify_requirement(g: Multigraph, colours: Sequence[int], need: Callable[[int], int], p: int = 0, limit: int = MAX_CYCLES) -> ValidityReport:
    """Check that every cycle of length ``l`` sees at least ``need(l)`` colours.

    On failure the violating cycle reported is the least one by (length,
    canonical edge sequence).
    """
    if len(colours) != g.size:
        raise ValueError("colouring must cover every edge")
    worst = None
    for vs, es in iter_cycle_paths(g, limit=limit):
        req = need(len(es))
        got = len({colours[e] for e in es})
        if got < req:
            cyc = Cycle.canonical(vs, es)
            key = (len(cyc), cyc.edges)
            if worst is None or key < worst[0]:
                worst = (key, cyc, got, req)
    if worst is None:
        return ValidityReport(p, True)
    return ValidityReport(p, False, worst[1], worst[2], worst[3])


def verify_colouring(g: Multigraph, col: EdgeColouring | Sequence[int], p: int) -> ValidityReport:
    if p < 1:
        raise ValueError("p must be positive")
    colours = col.colours if isinstance(col, EdgeColouring) else tuple(col)
    return verify_requirement(g, colours, lambda length: min(length, p + 1), p)


def smallest_last_order(adj: Sequence[int]) -> list[int]:
    """Degeneracy ordering: repeatedly remove a vertex of least remaining degree
    (ties by index); returned in colouring order (reverse of removal)."""
    n = len(adj)
    alive = (1 << n) - 1
    deg = [(adj[v] & alive).bit_count() for v in range(n)]
    removed = []
    for _ in range(n):
        v = min(bits(alive), key=lambda x: (deg[x], x))
        removed.append(v)
        alive &= ~(1 << v)
        for w in bits(adj[v] & alive):
            deg[w] -= 1
    return removed[::-1]


def greedy_colour(adj: Sequence[int]) -> list[int]:
    """First-fit colouring along the smallest-last order."""
    colours = [-1] * len(adj)
    for v in smallest_last_order(adj):
        taken = {colours[w] for w in bits(adj[v]) if colours[w] >= 0}
        c = 0
        while c in taken:
            c += 1
        colours[v] = c
    return colours


def line_graph_masks(g: Multigraph) -> list[int]:
    masks = [0] * g.size
    for v in range(g.n):
        inc = 0
        for e, _ in g.incidence[v]:
            inc |= 1 << e
        for e, _ in g.incidence[v]:
            masks[e] |= inc & ~(1 << e)
    return masks


@dataclass
class ArbpResult:
    colouring: EdgeColouring
    report: ValidityReport
    completion: FraternalCompletion
    conflict_graph: ConflictGraph
    bound: int
    proper: bool = False
    orientation: Orientation = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {
            "p": self.report.parameter_p,
            "proper": self.proper,
            "palette_size": self.colouring.palette_size,
            "colours": list(self.colouring.colours),
            "valid": self.report.valid,
            "conflict_degree_bound": self.bound,
            "conflict_max_in_degree": self.conflict_graph.max_in_degree,
            "conflict_max_degree": self.conflict_graph.max_degree,
            "layer_max_indegree": list(self.completion.layer_indegree),
        }


def colour_arbp(g: Multigraph, p: int, proper: bool = False) -> ArbpResult:
    """Colouring in which every cycle ``C`` gets at least ``min(|C|, p+1)`` colours.

    With ``proper`` set, edges sharing an endpoint also get distinct colours.
    Raises ``InvariantViolation`` if the verifier rejects the result.
    """
    if p < 1:
        raise ValueError("p must be positive")
    o = min_indegree_orientation(g)
    fc = complete_to_depth(o, p)
    cg = conflicts(fc)
    adj = list(cg.adj)
    if proper:
        for e, extra in enumerate(line_graph_masks(g)):
            adj[e] |= extra
    col = EdgeColouring(tuple(greedy_colour(adj)))
    report = verify_colouring(g, col, p)
    if not report.valid:
        raise InvariantViolation(f"pipeline colouring failed verification at p={p}: {report}")
    if proper and any(col.colours[a] == col.colours[b] for a in range(g.size) for b in bits(line_graph_masks(g)[a])):
        raise InvariantViolation("proper colouring has two adjacent edges with one colour")
    return ArbpResult(col, report, fc, cg, conflict_degree_bound(fc), proper, o)


# -- exact oracles -----------------------------------------------------------


def cycle_requirements(g: Multigraph, need: Callable[[int], int]) -> list[Requirement]:
    return [Requirement(tuple(es), need(len(es))) for _, es in iter_cycle_paths(g)]


def arbp_exact(g: Multigraph, p: int) -> int:
    return arbp_exact_witness(g, p)[0]


def arbp_exact_witness(g: Multigraph, p: int) -> tuple[int, list[int]]:
    if p < 1:
        raise ValueError("p must be positive")
    if g.size == 0:
        return 0, []
    return min_palette(g.size, cycle_requirements(g, lambda length: min(length, p + 1)))


def nf_exact(g: Multigraph, f, p: int) -> int:
    """Minimum palette where every cycle ``C`` gets ``min(f(|C|), p+1)`` colours; ``f`` is callable."""
    if g.size == 0:
        return 0
    return min_palette(g.size, cycle_requirements(g, lambda length: min(f(length), p + 1)))[0]


@dataclass(frozen=True)
class LowerBound:
    value: Fraction
    density: Fraction
    arboricity: int
    density_witness: SubdivisionEmbedding
    arboricity_witness: SubdivisionEmbedding | None

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "shallow_density": str(self.density),
            "pattern_arboricity": self.arboricity,
            "density_pattern_branch_vertices": list(self.density_witness.branch_vertices),
        }


def arbp_lower_bound(g: Multigraph, p: int) -> LowerBound:
    """``max(density, arboricity)`` over patterns with a ``<= (p-1)``-subdivision in ``g``.

    ``arbp_exact(g, p) ** p`` is at least this value.
    """
    if p < 1:
        raise ValueError("p must be positive")
    dens = mtrdens(g, p - 1)
    arb, arb_w = max_pattern_arboricity(g, p - 1)
    return LowerBound(max(dens.value, Fraction(arb)), dens.value, arb, dens.embedding, arb_w)
