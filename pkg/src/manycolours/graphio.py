"""Text formats: the ``p mgraph`` edge list, colouring files and DOT export.

Edge-list format::

    c optional comment lines
    p mgraph <n> <m>
    e <u> <v>          (m lines, 0-based; parallel edges repeated)

Colouring format: one ``<edge-index> <colour>`` line per edge.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .errors import GraphParseError
from .multigraph import Multigraph


def parse_graph(text: str) -> Multigraph:
    n = m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "mgraph":
                raise GraphParseError("header must read 'p mgraph <n> <m>'", lineno)
            n, m = _ints(parts[2:], lineno)
            if n < 0 or m < 0:
                raise GraphParseError("negative size in header", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphParseError("edge line before header", lineno)
            if len(parts) != 3:
                raise GraphParseError("edge line must read 'e <u> <v>'", lineno)
            u, v = _ints(parts[1:], lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(f"endpoint out of range [0, {n})", lineno)
            if u == v:
                raise GraphParseError("loops are not allowed", lineno)
            edges.append((u, v))
        else:
            raise GraphParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing 'p mgraph' header")
    if len(edges) != m:
        raise GraphParseError(f"header declares {m} edges but {len(edges)} were given")
    return Multigraph(n, tuple(edges))


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def format_graph(g: Multigraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p mgraph {g.n} {g.size}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Multigraph:
    return parse_graph(Path(path).read_text())


def parse_colouring(text: str, m: int) -> list[int]:
    colours: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError("colouring line must read '<edge-index> <colour>'", lineno)
        e, c = _ints(parts, lineno)
        if not 0 <= e < m:
            raise GraphParseError(f"edge index out of range [0, {m})", lineno)
        if e in colours:
            raise GraphParseError(f"edge {e} coloured twice", lineno)
        colours[e] = c
    missing = [e for e in range(m) if e not in colours]
    if missing:
        raise GraphParseError(f"colouring is not total; missing edges {missing[:5]}")
    return [colours[e] for e in range(m)]


def format_colouring(colours: Sequence[int]) -> str:
    return "".join(f"{e} {c}\n" for e, c in enumerate(colours))


def to_dot(g: Multigraph, colours: Sequence[int] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(g.n))
    for e, (u, v) in enumerate(g.edges):
        label = f"e{e}" if colours is None else f"e{e}:c{colours[e]}"
        lines.append(f'  {u} -- {v} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
