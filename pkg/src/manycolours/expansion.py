"""Checks tying shallow densities to colourings, blow-ups and tree-depth.

* ``check_expansion_theorem``: ``nabla_r(G) <= N_f(G, 2r+1)**(2r+1) * g(2r+1)**2``.
* ``check_blowup_lemma``: density of ``G * m`` against densities of ``G``.
* ``embed_Ta_into_blowup``: the subdivided top layer of a completion inside a blow-up.
* ``verify_f0_colouring`` / ``low_td_colouring_bruteforce``: edge colourings
  read off vertex colourings whose few-class unions have low tree-depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .errors import BudgetExceeded
from .fraternal import FraternalCompletion
from .generators import blow_up, subdivide
from .multigraph import Multigraph, bits
from .rainbow import ValidityReport, nf_exact, verify_requirement
from .shallow import mtrdens, shallow_minor_density
from .treedepth import TreedepthOracle, ceil_log2


@dataclass(frozen=True)
class FunctionSpec:
    """Non-decreasing unbounded ``f`` on positive integers, as a rule or a table.

    A table lists ``f(1), f(2), ...``; asking beyond it is an error rather
    than a guess.
    """

    name: str
    rule: Callable[[int], int] | None = field(default=None, compare=False)
    table: tuple[int, ...] | None = None

    @classmethod
    def identity(cls) -> FunctionSpec:
        return cls("identity", lambda x: x)

    @classmethod
    def log2ceil(cls) -> FunctionSpec:
        return cls("log2ceil", ceil_log2)

    @classmethod
    def from_table(cls, values: Sequence[int], name: str = "table") -> FunctionSpec:
        vals = tuple(int(v) for v in values)
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise ValueError("table must be non-decreasing")
        return cls(name, None, vals)

    def __call__(self, x: int) -> int:
        if x < 1:
            raise ValueError("f is defined on positive integers")
        if self.table is not None:
            if x > len(self.table):
                raise ValueError(f"table for {self.name} stops at {len(self.table)}")
            return self.table[x - 1]
        return self.rule(x)

    def g_dual(self, p: int) -> int:
        """``max {i : f(i) <= p}``."""
        if self(1) > p:
            raise ValueError(f"f(1) > {p}; the dual is undefined")
        i = 1
        while True:
            try:
                nxt = self(i + 1)
            except ValueError:
                raise ValueError(f"table for {self.name} too short to bound g({p})") from None
            if nxt > p:
                return i
            i += 1

    def bounded_by_identity(self, upto: int) -> bool:
        return all(self(x) <= x for x in range(1, upto + 1))


NAMED_FUNCTIONS = {"identity": FunctionSpec.identity, "log2ceil": FunctionSpec.log2ceil}


@dataclass(frozen=True)
class ExpansionReport:
    r: int
    minor_density: Fraction
    nf: int
    g_value: int
    rhs: int
    branch_sets: tuple[tuple[int, ...], ...]

    @property
    def holds(self) -> bool:
        return self.minor_density <= self.rhs

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "minor_density": str(self.minor_density),
            "nf": self.nf,
            "g": self.g_value,
            "rhs": self.rhs,
            "slack": str(self.rhs - self.minor_density),
            "holds": self.holds,
            "branch_sets": [list(b) for b in self.branch_sets],
        }


def check_expansion_theorem(g: Multigraph, f: FunctionSpec, r: int) -> ExpansionReport:
    """Both sides of ``nabla_r(G) <= N_f(G, 2r+1)**(2r+1) * g(2r+1)**2`` on the simplified graph."""
    s = g.simplify()
    q = 2 * r + 1
    lhs, fam = shallow_minor_density(s, r)
    nf = nf_exact(s, f, q)
    gv = f.g_dual(q)
    return ExpansionReport(r, lhs, nf, gv, nf**q * gv**2, fam)


@dataclass(frozen=True)
class BlowupReport:
    m: int
    r2: int
    lhs: Fraction
    shallow: Fraction
    density: Fraction

    @property
    def rhs(self) -> Fraction:
        return (self.r2 * (self.m - 1) + 1) * self.shallow + self.m**2 * self.density + self.m - 1

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "r2": self.r2,
            "blowup_shallow_density": str(self.lhs),
            "shallow_density": str(self.shallow),
            "density": str(self.density),
            "rhs": str(self.rhs),
            "slack": str(self.rhs - self.lhs),
            "holds": self.holds,
        }


def check_blowup_lemma(g: Multigraph, m: int, r2: int) -> BlowupReport:
    """``d_r(G*m) <= (2r(m-1)+1) d_r(G) + m^2 d_0(G) + m - 1`` with ``r2 = 2r``."""
    if m < 1:
        raise ValueError("blow-up factor must be positive")
    lhs = mtrdens(blow_up(g, m), r2).value
    return BlowupReport(m, r2, lhs, mtrdens(g, r2).value, mtrdens(g, 0).value)


# -- layer embedding ----------------------------------------------------------


@dataclass(frozen=True)
class TaEmbedding:
    """``pattern`` (subdivided layer) mapped into ``host`` (the blow-up).

    Host vertex ``x*m + i`` is copy ``i`` of base vertex ``x``; branch
    vertices use copy 0 and walk interiors use copies ``1..m-1``.
    """

    a: int
    m: int
    pattern: Multigraph
    host: Multigraph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def problems(self) -> list[str]:
        out = []
        if len(set(self.vertex_map)) != len(self.vertex_map):
            out.append("vertex map not injective")
        if len(set(self.edge_map)) != len(self.edge_map):
            out.append("edge map not injective")
        for e, (u, v) in enumerate(self.pattern.edges):
            if set(self.host.edges[self.edge_map[e]]) != {self.vertex_map[u], self.vertex_map[v]}:
                out.append(f"pattern edge {e} not preserved")
        return out

    def validate(self) -> bool:
        return not self.problems()

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "m": self.m,
            "pattern_vertices": self.pattern.n,
            "pattern_edges": [list(e) for e in self.pattern.edges],
            "vertex_map": list(self.vertex_map),
            "edge_map": list(self.edge_map),
            "valid": self.validate(),
        }


def embed_Ta_into_blowup(fc: FraternalCompletion, a: int) -> TaEmbedding:
    """Embed the ``(a-1)``-subdivision of layer ``E_a`` into ``G * m``.

    Each arc ``e`` of ``E_a`` runs along its walk ``W(e)``; the ``j``-th
    interior visit of base vertex ``x`` (over all arcs, in arc order) uses
    copy ``j`` of ``x``, so ``m`` is one more than the largest visit count.
    """
    if not 2 <= a <= fc.depth:
        raise ValueError("need 2 <= a <= depth")
    g = fc.base.graph
    layer = fc.layer(a)
    pattern = subdivide(Multigraph(g.n, tuple((arc.tail, arc.head) for arc in layer)), [a - 1] * len(layer))
    visits = [0] * g.n
    copies: list[list[int]] = []
    for arc in layer:
        row = [0]
        for x in fc.walks[arc.id].interior:
            visits[x] += 1
            row.append(visits[x])
        row.append(0)
        copies.append(row)
    m = 1 + max(visits, default=0)
    host = blow_up(g, m)
    vmap = [v * m for v in range(g.n)] + [0] * (pattern.n - g.n)
    emap = []
    nxt = g.n
    for arc, row in zip(layer, copies):
        walk = fc.walks[arc.id]
        ids = [walk.vertices[0]] + list(range(nxt, nxt + a - 1)) + [walk.vertices[-1]]
        nxt += a - 1
        for i, (e, _) in enumerate(walk.steps):
            x, y = walk.vertices[i], walk.vertices[i + 1]
            cx, cy = row[i], row[i + 1]
            if 0 < i:
                vmap[ids[i]] = x * m + cx
            ex, _ = g.edges[e]
            ci, cj = (cx, cy) if ex == x else (cy, cx)
            emap.append(e * m * m + ci * m + cj)
    return TaEmbedding(a, m, pattern, host, tuple(vmap), tuple(emap))


# -- low tree-depth vertex colourings ------------------------------------------------


def pair_colour_index(a: int, b: int) -> int:
    """Integer code of the unordered pair ``{a, b}`` (``a == b`` allowed)."""
    lo, hi = min(a, b), max(a, b)
    return hi * (hi + 1) // 2 + lo


@dataclass(frozen=True)
class F0Report:
    r: int
    hypothesis: bool
    failing_classes: tuple[int, ...] | None
    failing_treedepth: int | None
    edge_colours: tuple[int, ...]
    conclusion: ValidityReport

    @property
    def holds(self) -> bool:
        return self.conclusion.valid or not self.hypothesis

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "hypothesis": self.hypothesis,
            "failing_classes": list(self.failing_classes) if self.failing_classes else None,
            "failing_treedepth": self.failing_treedepth,
            "edge_colours": list(self.edge_colours),
            "conclusion": self.conclusion.to_json(),
        }


def class_union_violation(g: Multigraph, vcol: Sequence[int], upto: int, oracle: TreedepthOracle | None = None):
    """First union of ``i <= upto`` colour classes with tree-depth above ``i``, or None."""
    oracle = oracle or TreedepthOracle(g)
    classes: dict[int, int] = {}
    for v, c in enumerate(vcol):
        classes[c] = classes.get(c, 0) | 1 << v
    names = sorted(classes)
    for i in range(1, upto + 1):
        for combo in combinations(names, i):
            mask = 0
            for c in combo:
                mask |= classes[c]
            td = oracle.value(mask)
            if td > i:
                return combo, td
    return None


def verify_f0_colouring(g: Multigraph, vcol: Sequence[int], r: int) -> F0Report:
    """Check the tree-depth hypothesis on ``vcol`` and the cycle conclusion for its pair colouring."""
    if len(vcol) != g.n:
        raise ValueError("vertex colouring must be total")
    bad = class_union_violation(g, vcol, r + 1)
    ecol = tuple(pair_colour_index(vcol[u], vcol[v]) for u, v in g.edges)
    conclusion = verify_requirement(g, ecol, lambda length: min(r + 1, ceil_log2(length)), r)
    return F0Report(r, bad is None, bad[0] if bad else None, bad[1] if bad else None, ecol, conclusion)


def low_td_colouring_bruteforce(g: Multigraph, p: int, limit: int = 2_000_000) -> list[int]:
    """Fewest-colour vertex colouring whose unions of ``i <= p`` classes have tree-depth ``<= i``."""
    if p < 1:
        raise ValueError("p must be positive")
    if g.n == 0:
        return []
    oracle = TreedepthOracle(g)
    col = [-1] * g.n
    classes: list[int] = []
    nodes = 0

    def ok(v: int) -> bool:
        c = col[v]
        others = [i for i in range(len(classes)) if i != c]
        for i in range(min(p, len(classes))):
            for combo in combinations(others, i):
                mask = classes[c]
                for k in combo:
                    mask |= classes[k]
                if oracle.value(mask) > i + 1:
                    return False
        return True

    def place(v: int, palette: int) -> bool:
        nonlocal nodes
        if v == g.n:
            return True
        for c in range(min(palette, len(classes) + 1)):
            nodes += 1
            if nodes > limit:
                raise BudgetExceeded("low tree-depth colouring search", limit)
            fresh = c == len(classes)
            if fresh:
                classes.append(0)
            classes[c] |= 1 << v
            col[v] = c
            if ok(v) and place(v + 1, palette):
                return True
            classes[c] &= ~(1 << v)
            if fresh:
                classes.pop()
        col[v] = -1
        return False

    for palette in range(1, g.n + 1):
        if place(0, palette):
            return list(col)
    raise AssertionError("distinct colours always satisfy the condition")
