from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import multigraphs
from manycolours.dual import (
    arbstar_exact,
    arbstar_exact_witness,
    ceil_root,
    check_dual_proposition,
    colour_cuts_via_packing,
    double_edges,
    edge_connectivity,
    tree_packing,
    verify_cut_colouring,
)
from manycolours.density import is_forest
from manycolours.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    gen_multicycle,
    path_graph,
)
from manycolours.structure import enumerate_cuts


def arbstar_by_enumeration(g, p):
    cuts = [c.edges for c in enumerate_cuts(g)]
    for palette in range(1, g.size + 1):
        for col in product(range(palette), repeat=g.size):
            if all(len({col[e] for e in c}) >= min(len(c), p + 1) for c in cuts):
                return palette
    return 0


def test_verify_cut_examples():
    for p in (1, 2, 3):
        assert verify_cut_colouring(path_graph(2), [7], p).valid
    bad = verify_cut_colouring(cycle_graph(4), [1, 1, 1, 1], 1)
    assert not bad.valid and len(bad.violating_cut) == 2 and bad.colours_on_cut == 1
    assert verify_cut_colouring(cycle_graph(4), [0, 1, 2, 3], 1).valid
    assert bad.to_json()["violating_cut"]["required"] == 2


@pytest.mark.parametrize("L", [3, 4, 5])
def test_cycle_cuts_need_distinct_edges(L):
    assert arbstar_exact(cycle_graph(L), 1) == L


def test_arbstar_examples():
    assert arbstar_exact(path_graph(2), 1) == 1
    assert arbstar_exact(path_graph(2), 4) == 1
    value, col = arbstar_exact_witness(gen_multicycle(3, 2), 2)
    assert value >= 2 and verify_cut_colouring(gen_multicycle(3, 2), col, 2).valid
    assert arbstar_exact(complete_graph(5), 1) == 2
    with pytest.raises(ValueError):
        arbstar_exact(cycle_graph(3), 0)


@given(multigraphs(min_n=2, max_n=5, max_m=6, connected=True), st.integers(1, 2))
@settings(max_examples=25)
def test_arbstar_matches_enumeration(g, p):
    assert arbstar_exact(g, p) == arbstar_by_enumeration(g, p)


@given(multigraphs(min_n=2, max_n=5, max_m=8, connected=True), st.integers(1, 2))
@settings(max_examples=30)
def test_big_cut_forces_p_plus_one(g, p):
    if any(len(c) >= p + 1 for c in enumerate_cuts(g)):
        assert arbstar_exact(g, p) >= p + 1


# -- packings ---------------------------------------------------------------------


def test_tree_packing_examples():
    two = tree_packing(complete_graph(4), 2)
    assert two is not None and sorted(map(len, two)) == [3, 3]
    assert all(is_forest(complete_graph(4), t) for t in two)
    assert tree_packing(cycle_graph(4), 2) is None
    assert tree_packing(complete_graph(5), 2) is not None
    with pytest.raises(ValueError):
        tree_packing(cycle_graph(3), 0)


def test_edge_connectivity():
    assert edge_connectivity(cycle_graph(5)) == 2
    assert edge_connectivity(complete_graph(5)) == 4
    assert edge_connectivity(gen_multicycle(4, 3)) == 6
    assert edge_connectivity(path_graph(1)) == 0
    assert double_edges(cycle_graph(3)).size == 6


@given(multigraphs(min_n=2, max_n=5, max_m=12, connected=True), st.integers(1, 3))
@settings(max_examples=40)
def test_packing_exists_when_2k_edge_connected(g, k):
    lam = edge_connectivity(g)
    assert lam == min(len(c) for c in enumerate_cuts(g))
    trees = tree_packing(g, k)
    if lam >= 2 * k:
        assert trees is not None
    if trees is not None:
        assert len(trees) == k
        assert len({e for t in trees for e in t}) == k * (g.n - 1)
        assert all(len(t) == g.n - 1 and is_forest(g, t) for t in trees)


def test_colouring_via_packing():
    k5 = colour_cuts_via_packing(complete_graph(5), 1)
    assert k5.method == "packing" and k5.colouring.palette_size == 2 and k5.report.valid
    k33 = colour_cuts_via_packing(complete_bipartite(3, 3), 1)
    assert k33.method == "doubling" and k33.report.valid
    assert k33.colouring.palette_size <= 6
    # C_4: 2 trees need 6 edges, and 3 trees in the doubled C_4 need 9 of its 8
    assert colour_cuts_via_packing(cycle_graph(4), 1) is None
    with pytest.raises(ValueError):
        colour_cuts_via_packing(path_graph(2), 0)


@given(multigraphs(min_n=2, max_n=5, max_m=12, connected=True), st.integers(1, 2))
@settings(max_examples=40)
def test_packing_colourings_verify(g, p):
    res = colour_cuts_via_packing(g, p)
    if res is not None:
        assert verify_cut_colouring(g, res.colouring, p).valid
        limit = p + 1 if res.method == "packing" else (p + 1) * (2 * p + 1)
        assert res.colouring.palette_size <= limit


# -- proposition ------------------------------------------------------------------------


def test_ceil_root():
    assert [ceil_root(x, 2) for x in (1, 2, 4, 5, 9, 10)] == [1, 2, 2, 3, 3, 4]
    assert ceil_root(5, 1) == 5


def test_proposition_p1():
    rows = check_dual_proposition(1, (3, 4, 5), [("K5", complete_graph(5)), ("K4", complete_graph(4))])
    assert [r.value for r in rows[:3]] == [3, 4, 5]
    k5, k4 = rows[3:]
    assert k5.edge_connectivity == 4 and k5.value == 2 and (k5.expected_low, k5.expected_high) == (2, 2)
    assert k4.edge_connectivity == 3 and 2 <= k4.value <= 6 and k4.expected_high == 6
    assert all(r.holds for r in rows)


def test_proposition_p2_growth():
    rows = check_dual_proposition(2, (3, 4))
    assert [r.expected_low for r in rows] == [2, 2]
    assert all(r.holds for r in rows)
    assert all(r.edge_connectivity == 4 for r in rows)


@pytest.mark.parametrize("L, k", [(3, 1), (4, 1), (3, 2), (5, 2), (4, 3)])
def test_multicycles_pack_half_their_connectivity(L, k):
    g = gen_multicycle(L, k)
    assert edge_connectivity(g) == 2 * k
    assert tree_packing(g, k) is not None
    assert tree_packing(g, k + 1) is None or L * k >= (k + 1) * (L - 1)
