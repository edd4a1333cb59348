from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mg, multigraphs
from oracles import cycle_edge_sets_by_subsets
from manycolours.errors import BudgetExceeded, GraphParseError
from manycolours.generators import (
    blow_up,
    bowtie,
    complete_graph,
    cycle_graph,
    gen_multicycle,
    gen_tree_closure,
    multi_edge,
    path_graph,
    random_multigraph,
    star_graph,
    subdivide,
)
from manycolours.graphio import format_colouring, format_graph, parse_colouring, parse_graph, to_dot
from manycolours.multigraph import Multigraph
from manycolours.structure import (
    Cycle,
    block_edge_sets,
    blocks,
    cut_edge_sets,
    cycle_from_edge_set,
    enumerate_cuts,
    enumerate_cycles,
    is_two_connected,
)


def test_multigraph_rejects_loops_and_bad_endpoints():
    with pytest.raises(ValueError):
        mg(2, (0, 0))
    with pytest.raises(ValueError):
        mg(2, (0, 2))


def test_parallel_edges_keep_identities():
    g = multi_edge(3)
    assert g.size == 3
    assert g.multiplicity(0, 1) == 3
    assert g.edges_between(1, 0) == [0, 1, 2]
    assert g.simplify().size == 1


def test_contract_drops_loops_and_keeps_parallels():
    g = mg(3, (0, 1), (0, 1), (1, 2), (0, 2))
    h = g.contract_edge(0)
    assert h.n == 2
    assert h.size == 2  # the parallel copy of edge 0 became a loop and vanished
    assert g.delete_edge(0).size == 3


# -- cycles ----------------------------------------------------------------


def test_k4_has_seven_cycles():
    cycles = list(enumerate_cycles(complete_graph(4)))
    assert len(cycles) == 7
    assert sorted(len(c) for c in cycles) == [3, 3, 3, 3, 4, 4, 4]


def test_triple_edge_has_three_digons():
    cycles = list(enumerate_cycles(multi_edge(3)))
    assert len(cycles) == 3
    assert all(len(c) == 2 for c in cycles)


def test_tree_has_no_cycles():
    assert list(enumerate_cycles(star_graph(4))) == []
    assert list(enumerate_cycles(path_graph(5))) == []


def test_cycle_max_len_filter():
    assert len(list(enumerate_cycles(complete_graph(4), max_len=3))) == 4


def test_cycle_budget_is_loud():
    with pytest.raises(BudgetExceeded):
        list(enumerate_cycles(complete_graph(6), limit=10))


def test_cycles_are_canonical_and_valid():
    g = complete_graph(4)
    for c in enumerate_cycles(g):
        assert c.is_valid_in(g)
        vs, es = list(c.vertices), list(c.edges)
        assert Cycle.canonical(vs[1:] + vs[:1], es[1:] + es[:1]) == c
        # walking backwards from vertices[0]
        assert Cycle.canonical([vs[0]] + vs[:0:-1], es[::-1]) == c


@given(multigraphs(max_n=5, max_m=7))
def test_cycle_enumeration_matches_subset_oracle(g):
    found = [frozenset(c.edges) for c in enumerate_cycles(g)]
    assert len(found) == len(set(found))
    assert set(found) == cycle_edge_sets_by_subsets(g)


@given(multigraphs(max_n=5, max_m=6))
def test_subdividing_every_edge_doubles_cycle_lengths(g):
    before = sorted(len(c) for c in enumerate_cycles(g))
    after = sorted(len(c) for c in enumerate_cycles(subdivide(g, [1] * g.size)))
    assert after == [2 * x for x in before]


def test_cycle_from_edge_set():
    g = cycle_graph(5)
    assert len(cycle_from_edge_set(g, range(5))) == 5
    assert cycle_from_edge_set(g, [0, 1]) is None
    assert cycle_from_edge_set(multi_edge(2), [0, 1]).vertices == (0, 1)


# -- cuts --------------------------------------------------------------------


def test_c4_cuts():
    cuts = list(enumerate_cuts(cycle_graph(4)))
    assert len(cuts) == 7
    # every pair of edges is a bond; only the diagonal split cuts all four
    assert sorted(len(c) for c in cuts) == [2, 2, 2, 2, 2, 2, 4]
    singles = [c for c in cuts if len(c.side) == 1 or len(c.side) == 3]
    assert len(singles) == 4 and all(len(c) == 2 for c in singles)


def test_k2_single_cut():
    cuts = list(enumerate_cuts(path_graph(2)))
    assert [len(c) for c in cuts] == [1]


def test_cycle_cuts_contain_every_pair_of_edges():
    L = 6
    sets = {frozenset(s) for s in cut_edge_sets(cycle_graph(L))}
    for i in range(L):
        for j in range(i + 1, L):
            assert frozenset((i, j)) in sets


def test_cuts_need_connectivity():
    with pytest.raises(ValueError):
        list(enumerate_cuts(mg(3, (0, 1))))


@given(multigraphs(min_n=2, max_n=6, connected=True))
def test_cut_sides_reproduce_edges(g):
    cuts = list(enumerate_cuts(g))
    assert len(cuts) == 2 ** (g.n - 1) - 1
    for c in cuts:
        side = sum(1 << v for v in c.side)
        assert c.edges == g.crossing_edges(side)
        assert 0 in c.side and len(c.side) < g.n


# -- blocks ------------------------------------------------------------------


def test_bowtie_blocks():
    bs = blocks(bowtie())
    assert len(bs) == 2
    assert all(b.size == 3 and b.n == 3 for b in bs)


def test_tree_blocks_are_bridges():
    assert len(block_edge_sets(star_graph(5))) == 5


def test_k4_is_one_block():
    assert block_edge_sets(complete_graph(4)) == [list(range(6))]
    assert is_two_connected(complete_graph(4))
    assert is_two_connected(multi_edge(2))
    assert not is_two_connected(bowtie())


@given(multigraphs(max_n=6, max_m=8))
def test_blocks_partition_edges_and_hold_cycles(g):
    bs = [set(b) for b in block_edge_sets(g)]
    assert sorted(e for b in bs for e in b) == list(range(g.size))
    for c in enumerate_cycles(g):
        assert sum(set(c.edges) <= b for b in bs) == 1


# -- generators -----------------------------------------------------------


def test_blow_up_examples():
    k2 = blow_up(path_graph(2), 2)
    assert (k2.n, k2.size) == (4, 4)
    assert sorted(len(c) for c in enumerate_cycles(k2)) == [4]
    c3 = blow_up(cycle_graph(3), 2)
    assert (c3.n, c3.size) == (6, 12)
    d = blow_up(multi_edge(2), 2)
    assert (d.n, d.size) == (4, 8)


@given(multigraphs(max_n=4, max_m=5), st.integers(1, 3))
def test_blow_up_sizes_and_multiplicities(g, m):
    h = blow_up(g, m)
    assert h.n == m * g.n and h.size == m * m * g.size
    for x in range(g.n):
        for y in range(g.n):
            assert h.multiplicity(x * m, y * m + m - 1) == (g.multiplicity(x, y) if x != y else 0)


def test_blow_up_by_one_is_identity():
    g = bowtie()
    assert blow_up(g, 1) == g


def test_subdivide_examples():
    c6 = subdivide(multi_edge(2), [2, 2])
    assert (c6.n, c6.size) == (6, 6)
    assert [len(c) for c in enumerate_cycles(c6)] == [6]
    tri = cycle_graph(3)
    assert subdivide(tri, {}) == tri
    one = subdivide(tri, {0: 1})
    assert (one.n, one.size) == (4, 4)
    assert one.edges[:2] == ((0, 3), (3, 1))


def test_multicycle_examples():
    assert gen_multicycle(3, 1) == cycle_graph(3)
    g = gen_multicycle(3, 2)
    assert (g.n, g.size) == (3, 6)
    assert min(len(c) for c in enumerate_cuts(g)) >= 4
    assert gen_multicycle(5, 2).size == 10


def test_tree_closure_examples():
    assert gen_tree_closure(1, 3).size == 3
    assert gen_tree_closure(1, 3).simplify() == complete_graph(3)
    p3 = gen_tree_closure(2, 2)
    assert (p3.n, p3.size) == (3, 2)
    assert sorted(p3.degree(v) for v in range(3)) == [1, 1, 2]
    g = gen_tree_closure(2, 3)
    assert (g.n, g.size) == (7, 10)


def test_tree_closure_budget():
    with pytest.raises(BudgetExceeded):
        gen_tree_closure(3, 9, limit=100)


def test_random_multigraph_is_reproducible():
    a = random_multigraph(8, 14, 7)
    assert a == random_multigraph(8, 14, 7)
    assert a != random_multigraph(8, 14, 8)
    assert a.size == 14


# -- text formats -----------------------------------------------------------


def test_graph_round_trip():
    g = mg(3, (0, 1), (0, 1), (1, 2))
    text = format_graph(g, comment="digon plus tail")
    assert text.startswith("c digon plus tail\np mgraph 3 3\n")
    assert parse_graph(text) == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("p mgraph 2 1\ne 0 0\n", 2),
        ("p mgraph 2 1\ne 0 7\n", 2),
        ("e 0 1\n", 1),
        ("p mgraph 2 1\nx 1\n", 2),
        ("p mgraph 2 one\n", 1),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_parse_edge_count_mismatch():
    with pytest.raises(GraphParseError):
        parse_graph("p mgraph 2 2\ne 0 1\n")


def test_colouring_format():
    assert parse_colouring(format_colouring([3, 1, 3]), 3) == [3, 1, 3]
    with pytest.raises(GraphParseError):
        parse_colouring("0 1\n", 2)
    with pytest.raises(GraphParseError):
        parse_colouring("0 1\n0 2\n1 1\n", 2)


def test_dot_export_lists_every_edge():
    dot = to_dot(multi_edge(2), [0, 1])
    assert dot.count("--") == 2 and 'label="e1:c1"' in dot


def test_graph_values_are_hashable_and_equal_by_content():
    assert {mg(2, (0, 1)), mg(2, (0, 1))} == {Multigraph(2, ((0, 1),))}
