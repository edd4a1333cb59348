from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mg, multigraphs
from manycolours.density import Orientation, min_indegree_orientation
from manycolours.fraternal import (
    ConflictGraph,
    above,
    audit,
    complete_to_depth,
    composition_bound,
    conflict_degree_bound,
    conflicts,
    depth1_completion,
    extend,
    walk_of,
)
from manycolours.generators import gen_multicycle, path_graph, star_graph
from manycolours.errors import BudgetExceeded

GOLDEN = Path(__file__).parent / "golden"


def oriented(n, *arcs):
    """Orientation whose edge ``i`` is the arc ``arcs[i] = (tail, head)``."""
    g = mg(n, *arcs)
    return Orientation(g, tuple(h for _, h in arcs))


def cyclic(L):
    return oriented(L, *((i, (i + 1) % L) for i in range(L)))


# -- depth 1 and extension ------------------------------------------------------


def test_depth1_examples():
    fc = depth1_completion(oriented(2, (0, 1)))
    assert fc.depth == 1 and [(a.tail, a.head, a.weight, a.kappa) for a in fc.arcs] == [(0, 1, 1, None)]
    empty = depth1_completion(Orientation(mg(3), ()))
    assert empty.layers == ((),)
    c3 = depth1_completion(cyclic(3))
    assert len(c3.layer(1)) == 3 and all(a.kappa is None for a in c3.arcs)


def test_forced_second_layer_arc():
    # u=0 -> w=2 <- v=1
    fc = extend(depth1_completion(oriented(3, (0, 2), (1, 2))))
    (arc,) = fc.layer(2)
    assert {arc.tail, arc.head} == {0, 1} and arc.weight == 2
    walk = walk_of(fc, arc.id)
    assert walk.vertices == (arc.tail, 2, arc.head)
    assert walk.simple and len(walk) == 2
    f, g = arc.kappa
    assert walk == walk_of(fc, f).then(walk_of(fc, g).reversed())


def test_single_arc_has_no_extension():
    fc = extend(depth1_completion(oriented(2, (0, 1))))
    assert fc.layer(2) == []


def test_cyclic_triangle_has_empty_second_layer():
    # every vertex is the head of exactly one arc, so no fraternal pair exists
    fc = complete_to_depth(cyclic(3), 2)
    assert [len(fc.layers[i]) for i in range(2)] == [3, 0]
    assert all(above(fc, e) == {e} for e in range(3))


def test_doubled_triangle_with_mixed_orientation():
    g = gen_multicycle(3, 2)
    # each parallel class gets one arc in each direction
    heads = tuple(g.edges[e][e % 2] for e in range(g.size))
    fc = complete_to_depth(Orientation(g, heads), 2)
    assert audit(fc) == []
    # every vertex is the head of two arcs from its two neighbours
    assert [len(fc.layers[i]) for i in range(2)] == [6, 3]
    for e in range(g.size):
        ups = above(fc, e)
        assert len(ups) == 2 and [fc.arcs[x].weight for x in sorted(ups)] == [1, 2]


def test_star_into_centre():
    fc = complete_to_depth(Orientation(star_graph(3), (0, 0, 0)), 2)
    layer = fc.layer(2)
    assert len(layer) == 3
    assert {frozenset((a.tail, a.head)) for a in layer} == {frozenset(p) for p in ((1, 2), (1, 3), (2, 3))}
    # the three leaf arcs are oriented with in-degree 1
    assert fc.layer_indegree == (3, 1)


def test_golden_dump():
    fc = complete_to_depth(Orientation(star_graph(3), (0, 0, 0)), 2)
    assert fc.dumps() + "\n" == (GOLDEN / "star3_depth2.json").read_text()


def test_non_simple_walk():
    # 0 -> 1 <- 2 and 1 -> 2: the weight-3 arc between 0 and 1 walks 0,1,2,1
    fc = complete_to_depth(oriented(3, (0, 1), (2, 1), (1, 2)), 3)
    assert audit(fc) == []
    walks = [walk_of(fc, a.id) for a in fc.layer(3)]
    assert walks and not all(w.simple for w in walks)
    bad = next(w for w in walks if not w.simple)
    assert len(bad) == 3 and bad.vertices.count(1) == 2


def test_depth_must_be_positive():
    with pytest.raises(ValueError):
        complete_to_depth(cyclic(3), 0)


def test_layer_cap_is_loud():
    fc = depth1_completion(Orientation(star_graph(6), (0,) * 6))
    with pytest.raises(BudgetExceeded):
        extend(fc, cap=10)


# -- above and C(f) ---------------------------------------------------------------


def test_above_examples():
    fc1 = depth1_completion(cyclic(4))
    assert all(above(fc1, e) == {e} for e in range(4))
    fc = extend(depth1_completion(oriented(3, (0, 2), (1, 2))))
    (arc,) = fc.layer(2)
    assert above(fc, 0) == {0, arc.id} and above(fc, 1) == {1, arc.id}


def test_composition_bound_small_cases():
    assert composition_bound(depth1_completion(cyclic(3))) == 1
    fc = complete_to_depth(Orientation(star_graph(3), (0, 0, 0)), 3)
    # depth 3: empty, (1), (2), (1,1) with layer maxima d1=3, d2=1
    d1, d2, _ = fc.layer_indegree
    assert composition_bound(fc) == 1 + d1 + d2 + d1 * d1


# -- conflicts ------------------------------------------------------------------


def conflicts_by_paths(fc) -> set[tuple[int, int]]:
    """Literal definition: enumerate vertex-simple directed paths of at most ``a`` arcs."""
    a = fc.depth
    out_arcs: dict[int, list] = {}
    for arc in fc.arcs:
        out_arcs.setdefault(arc.tail, []).append(arc)
    ends: dict[int, set[int]] = {}

    def grow(first, path_vertices, length):
        last = path_vertices[-1]
        ends.setdefault(first.id, set()).add(last)
        if length == a:
            return
        for arc in out_arcs.get(last, []):
            if arc.head not in path_vertices:
                grow(first, path_vertices + [arc.head], length + 1)

    for arc in fc.arcs:
        grow(arc, [arc.tail, arc.head], 1)
    m = fc.base.graph.size
    ups = [above(fc, e) for e in range(m)]
    found = set()
    for e1 in range(m):
        for e2 in range(m):
            for f1 in ups[e1]:
                if any({fc.arcs[f2].tail, fc.arcs[f2].head} & ends[f1] for f2 in ups[e2]):
                    found.add((e1, e2))
                    break
    return found


def conflict_set(cg: ConflictGraph) -> set[tuple[int, int]]:
    return {(e1, e2) for e1 in range(cg.m) for e2 in range(cg.m) if cg.is_conflict(e1, e2)}


def test_depth1_conflicts_follow_heads():
    # 0 -> 1 -> 2, 3 <- 4 -> 5 (tails meet at 4), 6 -> 7 alone
    o = oriented(8, (0, 1), (1, 2), (4, 3), (4, 5), (6, 7))
    cg = conflicts(depth1_completion(o))
    assert cg.is_conflict(0, 1) and not cg.is_conflict(1, 0)
    assert not cg.is_conflict(2, 3) and not cg.is_conflict(3, 2)
    assert cg.pairs() == [(0, 1)]
    assert cg.self_conflicts == [0, 1, 2, 3, 4]


def test_matching_has_only_self_conflicts():
    cg = conflicts(depth1_completion(oriented(4, (0, 1), (2, 3))))
    assert cg.pairs() == [] and cg.self_conflicts == [0, 1]
    single = conflicts(depth1_completion(oriented(2, (0, 1))))
    assert single.self_conflicts == [0] and single.max_degree == 0


def test_cyclic_c4_conflicts_are_uniform():
    cg = conflicts(complete_to_depth(cyclic(4), 2))
    assert len({cg.degree(e) for e in range(4)}) == 1
    assert len({cg.in_degree(e) for e in range(4)}) == 1


def test_conflict_bound_formula():
    assert conflict_degree_bound(depth1_completion(cyclic(5))) == 6
    fc = depth1_completion(Orientation(star_graph(4), (0,) * 4))
    assert conflict_degree_bound(fc) == 3 * 4


@given(multigraphs(max_n=5, max_m=7), st.integers(1, 3), st.data())
@settings(max_examples=40)
def test_conflicts_match_path_definition(g, depth, data):
    heads = tuple(data.draw(st.sampled_from(e)) for e in g.edges)
    fc = complete_to_depth(Orientation(g, heads), depth)
    assert conflict_set(conflicts(fc)) == conflicts_by_paths(fc)


# -- invariants over random orientations ------------------------------------------


@given(multigraphs(max_n=6, max_m=8), st.integers(1, 3), st.data())
@settings(max_examples=50)
def test_completion_invariants(g, depth, data):
    if data.draw(st.booleans()):
        o = min_indegree_orientation(g)
    else:
        o = Orientation(g, tuple(data.draw(st.sampled_from(e)) for e in g.edges))
    fc = complete_to_depth(o, depth)
    assert audit(fc) == []
    C = composition_bound(fc)
    for arc in fc.arcs:
        w = walk_of(fc, arc.id)
        assert len(w) == arc.weight
        assert (w.vertices[0], w.vertices[-1]) == (arc.tail, arc.head)
        for i, (e, fwd) in enumerate(w.steps):
            u, v = g.edges[e]
            assert (w.vertices[i], w.vertices[i + 1]) == ((u, v) if fwd == (o.head(e) == v) else (v, u))
    for e in range(g.size):
        ups = above(fc, e)
        assert len(ups) <= C
        for arc in fc.arcs:
            assert (arc.id in ups) == (e in walk_of(fc, arc.id).edge_ids)
    cg = conflicts(fc)
    assert cg.max_in_degree <= conflict_degree_bound(fc)


def test_parallel_arcs_from_one_tail_are_not_fraternal():
    fc = complete_to_depth(oriented(2, (0, 1), (0, 1)), 2)
    assert fc.layer(2) == []


def test_path_orientation_towards_middle():
    fc = complete_to_depth(Orientation(path_graph(3), (1, 1)), 2)
    assert len(fc.layer(2)) == 1 and audit(fc) == []
