"""Exhaustive minimum-palette search under "this edge set needs k colours" constraints.

Colourings are generated as restricted-growth strings (edge ``i`` may only
open colour ``max_used + 1``), which removes palette permutations.  A
constraint is abandoned as soon as its distinct colours so far plus its
uncoloured edges fall short of its requirement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BudgetExceeded

MAX_SEARCH_NODES = 5_000_000
MAX_SEARCH_EDGES = 24


@dataclass(frozen=True)
class Requirement:
    edges: tuple[int, ...]
    need: int


def _normalise(reqs: Iterable[Requirement]) -> list[Requirement]:
    best: dict[tuple[int, ...], int] = {}
    for r in reqs:
        key = tuple(sorted(set(r.edges)))
        need = min(r.need, len(key))
        if need >= 2:
            best[key] = max(best.get(key, 0), need)
    return [Requirement(k, v) for k, v in sorted(best.items())]


def feasible(m: int, reqs: list[Requirement], palette: int, limit: int = MAX_SEARCH_NODES) -> list[int] | None:
    """A colouring of ``m`` edges with ``palette`` colours meeting every requirement, or None."""
    reqs = _normalise(reqs)
    if any(r.need > palette for r in reqs):
        return None
    touching: list[list[int]] = [[] for _ in range(m)]
    for idx, r in enumerate(reqs):
        for e in r.edges:
            touching[e].append(idx)
    # remaining[idx][i]: edges of requirement idx with id > i
    after = [[sum(1 for x in r.edges if x > i) for i in range(m)] for r in reqs]
    colour = [-1] * m
    nodes = 0

    def ok(i: int) -> bool:
        for idx in touching[i]:
            r = reqs[idx]
            seen = {colour[x] for x in r.edges if x <= i}
            if len(seen) + after[idx][i] < r.need:
                return False
        return True

    def place(i: int, used: int) -> bool:
        nonlocal nodes
        if i == m:
            return True
        for c in range(min(palette, used + 1)):
            nodes += 1
            if nodes > limit:
                raise BudgetExceeded("palette search nodes", limit)
            colour[i] = c
            if ok(i) and place(i + 1, max(used, c + 1)):
                return True
        colour[i] = -1
        return False

    return list(colour) if place(0, 0) else None


def min_palette(m: int, reqs: Iterable[Requirement], limit: int = MAX_SEARCH_NODES, max_edges: int = MAX_SEARCH_EDGES) -> tuple[int, list[int]]:
    """Smallest palette admitting a colouring that meets ``reqs``, with such a colouring."""
    if m > max_edges:
        raise BudgetExceeded("edges for exhaustive palette search", max_edges)
    reqs = _normalise(reqs)
    if m == 0:
        return 0, []
    start = max([1] + [r.need for r in reqs])
    for palette in range(start, m + 1):
        found = feasible(m, reqs, palette, limit)
        if found is not None:
            return palette, found
    raise AssertionError("a rainbow colouring always meets every requirement")
