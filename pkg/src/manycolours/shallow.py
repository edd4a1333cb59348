"""Shallow topological minors (with multiplicities) and shallow minors.

Depth is passed as ``r2 = 2r``, so a pattern edge may be realised by a path
with at most ``r2`` interior vertices.

For a fixed branch set ``B`` the largest pattern on ``B`` is found exactly:
every edge of ``G[B]`` is a pattern edge, every outside vertex seeing two
distinct branch vertices can carry one path on its own, and the remaining
outside vertices (each seeing at most one branch vertex) are packed into
disjoint paths of 2..r2 vertices.  Taking a vertex with two branch neighbours
as its own path never loses against using it inside a longer path, which is
what makes the split exact.  Branch sets are enumerated up to false-twin
symmetry (vertices with identical multiplicity rows), which keeps blow-ups
tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import ceil, prod

from .errors import BudgetExceeded
from .multigraph import Multigraph, bits

MAX_BRANCH_SETS = 1 << 16
MAX_BALL_FAMILIES = 2_000_000


@dataclass(frozen=True)
class BranchPath:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True)
class SubdivisionEmbedding:
    """``pattern`` vertex ``i`` sits at ``branch_vertices[i]``; pattern edge ``e`` runs along ``branch_paths[e]``."""

    pattern: Multigraph
    branch_vertices: tuple[int, ...]
    branch_paths: tuple[BranchPath, ...]

    def problems(self, g: Multigraph, r2: int) -> list[str]:
        out = []
        bv = self.branch_vertices
        if len(set(bv)) != len(bv) or len(bv) != self.pattern.n:
            out.append("branch map not injective")
        if len(self.branch_paths) != self.pattern.size:
            out.append("one path per pattern edge required")
            return out
        branch = set(bv)
        used_interior: set[int] = set()
        used_edges: set[int] = set()
        for e, ((a, b), path) in enumerate(zip(self.pattern.edges, self.branch_paths)):
            vs, es = path.vertices, path.edges
            if len(es) != len(vs) - 1 or len(es) < 1:
                out.append(f"path {e} malformed")
                continue
            if {vs[0], vs[-1]} != {bv[a], bv[b]}:
                out.append(f"path {e} endpoints do not match pattern edge")
            if len(es) > r2 + 1:
                out.append(f"path {e} has {len(es)} edges, more than {r2 + 1}")
            for i, eid in enumerate(es):
                if set(g.edges[eid]) != {vs[i], vs[i + 1]}:
                    out.append(f"path {e} step {i} is not an edge")
            if used_edges & set(es):
                out.append(f"path {e} reuses an edge")
            used_edges |= set(es)
            interior = vs[1:-1]
            if len(set(interior)) != len(interior) or branch & set(interior) or used_interior & set(interior):
                out.append(f"path {e} is not internally disjoint")
            used_interior |= set(interior)
        return out

    def validate(self, g: Multigraph, r2: int) -> bool:
        return not self.problems(g, r2)


# -- packing outside paths -------------------------------------------------


class _BranchSetSolver:
    """Largest pattern size on a branch set, with an optional explicit witness."""

    def __init__(self, g: Multigraph, r2: int):
        self.g = g
        self.r2 = r2

    def split(self, B: int):
        g = self.g
        good, rest, single = [], 0, {}
        for x in bits(g.full_mask & ~B):
            seen = g.nbr_mask[x] & B
            c = seen.bit_count()
            if self.r2 >= 1 and c >= 2:
                good.append(x)
            else:
                rest |= 1 << x
                if c == 1:
                    single[x] = seen.bit_length() - 1
        return good, rest, single

    def candidates(self, rest: int, single: dict[int, int]) -> dict[int, tuple[int, ...]]:
        """Vertex sets of size 2..r2 inside ``rest`` carrying a branch-to-branch path."""
        g = self.g
        found: dict[int, tuple[int, ...]] = {}
        if self.r2 < 2:
            return found
        for start in sorted(single):
            path = [start]
            stack = [iter(bits(g.nbr_mask[start] & rest))]
            used = 1 << start
            while stack:
                nxt = next(stack[-1], None)
                if nxt is None:
                    stack.pop()
                    used &= ~(1 << path.pop())
                    continue
                if used >> nxt & 1:
                    continue
                path.append(nxt)
                used |= 1 << nxt
                if nxt in single and single[nxt] != single[start] and used not in found:
                    found[used] = tuple(path)
                if len(path) < self.r2:
                    stack.append(iter(bits(g.nbr_mask[nxt] & rest)))
                else:
                    path.pop()
                    used &= ~(1 << nxt)
        return found

    @staticmethod
    def pack(cands: dict[int, tuple[int, ...]]) -> list[int]:
        """Maximum family of pairwise disjoint candidate sets."""
        if not cands:
            return []
        by_vertex: dict[int, list[int]] = {}
        universe = 0
        for c in cands:
            universe |= c
            for v in bits(c):
                by_vertex.setdefault(v, []).append(c)

        # best(avail) = (count, set taken at the lowest available vertex or 0)
        @lru_cache(maxsize=None)
        def best(avail: int) -> tuple[int, int]:
            if not avail:
                return (0, 0)
            low = avail & -avail
            top = (best(avail & ~low)[0], 0)
            for c in by_vertex.get(low.bit_length() - 1, ()):
                if c & avail == c:
                    sub = best(avail & ~c)[0] + 1
                    if sub > top[0]:
                        top = (sub, c)
            return top

        chosen = []
        avail = universe
        while avail:
            count, pick = best(avail)
            if count == 0:
                break
            if pick:
                chosen.append(pick)
                avail &= ~pick
            else:
                avail &= avail - 1
        return chosen

    def size(self, B: int, floor: int = -1) -> int | None:
        """Pattern size on ``B``, or None when a cheap upper bound is at most ``floor``."""
        inside = self.g.induced_size(B)
        # each outside vertex lies on at most one path
        outside = self.g.n - B.bit_count() if self.r2 >= 1 else 0
        if inside + outside <= floor:
            return None
        good, rest, single = self.split(B)
        total = inside + len(good)
        if self.r2 >= 2 and len(single) >= 2:
            # every longer path uses two vertices with a single branch neighbour
            if total + len(single) // 2 <= floor:
                return None
            total += len(self.pack(self.candidates(rest, single)))
        elif total <= floor:
            return None
        return total

    def witness(self, B: int) -> SubdivisionEmbedding:
        g = self.g
        good, rest, single = self.split(B)
        order = bits(B)
        index = {v: i for i, v in enumerate(order)}
        pattern_edges: list[tuple[int, int]] = []
        paths: list[BranchPath] = []
        for e, (u, v) in enumerate(g.edges):
            if B >> u & 1 and B >> v & 1:
                pattern_edges.append((index[u], index[v]))
                paths.append(BranchPath((u, v), (e,)))
        for x in good:
            ends = [w for w in bits(g.nbr_mask[x] & B)][:2]
            e1 = g.edges_between(ends[0], x)[0]
            e2 = g.edges_between(x, ends[1])[0]
            pattern_edges.append((index[ends[0]], index[ends[1]]))
            paths.append(BranchPath((ends[0], x, ends[1]), (e1, e2)))
        if self.r2 >= 2 and len(single) >= 2:
            cands = self.candidates(rest, single)
            for c in self.pack(cands):
                inner = cands[c]
                a, b = single[inner[0]], single[inner[-1]]
                vs = (a,) + inner + (b,)
                es = tuple(g.edges_between(vs[i], vs[i + 1])[0] for i in range(len(vs) - 1))
                pattern_edges.append((index[a], index[b]))
                paths.append(BranchPath(vs, es))
        return SubdivisionEmbedding(Multigraph(len(order), tuple(pattern_edges)), tuple(order), tuple(paths))


# -- branch-set enumeration ----------------------------------------------------


def twin_classes(g: Multigraph) -> list[list[int]]:
    """Classes of pairwise non-adjacent vertices with identical multiplicity rows."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.mult_rows[v], []).append(v)
    return sorted(groups.values())


def branch_sets(g: Multigraph, min_size: int = 1, limit: int = MAX_BRANCH_SETS):
    """One representative vertex mask per orbit of subsets under twin swaps."""
    classes = twin_classes(g)
    total = prod(len(c) + 1 for c in classes)
    if total > limit:
        raise BudgetExceeded("branch-set enumeration", limit)
    # larger sets first: they usually give a strong incumbent early
    prefixes = [[sum(1 << v for v in c[:k]) for k in range(len(c), -1, -1)] for c in classes]
    for choice in product(*prefixes):
        mask = 0
        for part in choice:
            mask |= part
        if mask.bit_count() >= min_size:
            yield mask


@dataclass(frozen=True)
class ShallowDensity:
    value: Fraction
    branch_set: tuple[int, ...]
    embedding: SubdivisionEmbedding


def mtrdens(g: Multigraph, r2: int, limit: int = MAX_BRANCH_SETS) -> ShallowDensity:
    """Exact maximum ``||H||/|H|`` over patterns ``H`` with a ``<= r2``-subdivision in ``g``."""
    if r2 < 0:
        raise ValueError("depth must be nonnegative")
    if g.n == 0:
        raise ValueError("graph must have at least one vertex")
    solver = _BranchSetSolver(g, r2)
    # incumbent as (size, |B|, B); compared by cross-multiplication
    num, den, arg = -1, 1, 0
    for B in branch_sets(g, 1, limit):
        k = B.bit_count()
        # sizes strictly below the incumbent ratio cannot win
        floor = -1 if num < 0 else (num * k + den - 1) // den - 1
        size = solver.size(B, floor)
        if size is None:
            continue
        lhs, rhs = size * den, num * k
        if lhs > rhs or (lhs == rhs and (k, bits(B)) < (den, bits(arg))):
            num, den, arg = size, k, B
    val, B = Fraction(num, den), arg
    return ShallowDensity(val, tuple(bits(B)), solver.witness(B))


def max_pattern_arboricity(g: Multigraph, r2: int, limit: int = MAX_BRANCH_SETS) -> tuple[int, SubdivisionEmbedding | None]:
    """Maximum Nash-Williams arboricity of a pattern with a ``<= r2``-subdivision in ``g``."""
    solver = _BranchSetSolver(g, r2)
    best, arg = 0, None
    for B in branch_sets(g, 2, limit):
        k = B.bit_count()
        # arboricity above ``best`` needs more than best*(k-1) edges
        size = solver.size(B, best * (k - 1))
        if size is None:
            continue
        val = ceil(Fraction(size, k - 1))
        if val > best:
            best, arg = val, B
    return best, (solver.witness(arg) if arg is not None else None)


def pattern_size(g: Multigraph, r2: int, branch: int) -> int:
    """Largest number of pattern edges on the branch vertex mask ``branch``."""
    return _BranchSetSolver(g, r2).size(branch)


def mtrdens_bruteforce(g: Multigraph, r2: int, limit: int = 10**6) -> Fraction:
    """Independent oracle: plain backtracking over branch sets and path families.

    All branch-to-branch paths with at most ``r2`` interior vertices are
    listed and the largest internally disjoint family is searched
    exhaustively; no structural shortcut is used.
    """
    best = Fraction(0)
    steps = 0
    for B in range(1, 1 << g.n):
        interiors = set()
        for a in bits(B):
            stack = [(a, 0)]
            while stack:
                cur, used = stack.pop()
                for w in bits(g.nbr_mask[cur]):
                    if B >> w & 1:
                        if used and w != a:
                            interiors.add(used)
                    elif not used >> w & 1 and used.bit_count() < r2:
                        stack.append((w, used | 1 << w))
        inner = sorted(interiors)
        top = 0

        def search(i: int, used: int, count: int):
            nonlocal top, steps
            steps += 1
            if steps > limit:
                raise BudgetExceeded("subdivision brute force", limit)
            if count + len(inner) - i <= top:
                return
            if i == len(inner):
                top = count
                return
            if not inner[i] & used:
                search(i + 1, used | inner[i], count + 1)
            search(i + 1, used, count)

        search(0, 0, 0)
        best = max(best, Fraction(g.induced_size(B) + top, B.bit_count()))
    return best


# -- shallow minors ----------------------------------------------------------


def _radius_within(g: Multigraph, mask: int, r: int) -> bool:
    for c in bits(mask):
        seen = frontier = 1 << c
        for _ in range(r):
            nxt = 0
            for x in bits(frontier):
                nxt |= g.nbr_mask[x]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        if seen == mask:
            return True
    return False


def balls(g: Multigraph, r: int) -> list[int]:
    """Connected vertex masks of radius at most ``r`` (from some centre, inside the set)."""
    out = set()
    for v in range(g.n):
        # connected sets containing v with v as smallest vertex
        stack = [(1 << v, g.nbr_mask[v] & ~((1 << (v + 1)) - 1))]
        seen_sets = {1 << v}
        while stack:
            mask, frontier = stack.pop()
            if _radius_within(g, mask, r):
                out.add(mask)
            for w in bits(frontier):
                nm = mask | 1 << w
                if nm in seen_sets:
                    continue
                seen_sets.add(nm)
                stack.append((nm, (frontier | g.nbr_mask[w]) & ~nm & ~((1 << (v + 1)) - 1)))
    return sorted(out, key=lambda m: (m.bit_count(), bits(m)))


def shallow_minor_density(g: Multigraph, r: int, limit: int = MAX_BALL_FAMILIES) -> tuple[Fraction, tuple[tuple[int, ...], ...]]:
    """Exact ``max ||H||/|H|`` over simple depth-``r`` minors ``H`` of the simplified ``g``.

    Returns the value and the family of branch sets of a maximiser.
    """
    s = g.simplify()
    if s.n == 0:
        raise ValueError("graph must have at least one vertex")
    pool = balls(s, r)
    by_low: dict[int, list[int]] = {}
    for b in pool:
        by_low.setdefault((b & -b).bit_length() - 1, []).append(b)
    best = [Fraction(0), ((0,),)]
    steps = 0
    family: list[int] = []

    def edges_of(fam: list[int]) -> int:
        cnt = 0
        for i in range(len(fam)):
            reach = 0
            for x in bits(fam[i]):
                reach |= s.nbr_mask[x]
            for j in range(i + 1, len(fam)):
                if reach & fam[j]:
                    cnt += 1
        return cnt

    def search(v: int, used: int):
        nonlocal steps
        steps += 1
        if steps > limit:
            raise BudgetExceeded("shallow minor enumeration", limit)
        if v == s.n:
            if family:
                val = Fraction(edges_of(family), len(family))
                if val > best[0]:
                    best[0] = val
                    best[1] = tuple(tuple(bits(b)) for b in family)
            return
        if used >> v & 1:
            search(v + 1, used)
            return
        search(v + 1, used)
        for b in by_low.get(v, ()):
            if not b & used:
                family.append(b)
                search(v + 1, used | b)
                family.pop()

    search(0, 0)
    return best[0], best[1]
