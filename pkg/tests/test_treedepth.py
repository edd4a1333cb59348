from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given, settings

from conftest import mg, multigraphs
from manycolours.errors import BudgetExceeded
from manycolours.generators import bowtie, complete_graph, cycle_graph, gen_tree_closure, path_graph, theta_graph
from manycolours.treedepth import (
    TdDecomposition,
    TreedepthOracle,
    ceil_log2,
    check_td_cycle_bounds,
    closure_long_cycle,
    dfs_cycle_family,
    longest_cycle,
    td_cycle_bounds,
    treedepth_exact,
)
from manycolours.structure import is_two_connected


def treedepth_by_orders(g) -> int:
    """Tree-depth as the least height over elimination orders (each vertex's parent is
    the latest-eliminated vertex it is joined to in the filled graph)."""
    best = g.n
    for order in permutations(range(g.n)):
        pos = {v: i for i, v in enumerate(order)}
        # root first: vertex order[0] is the top of the forest
        nbrs = [set(x for x in range(g.n) if g.multiplicity(v, x)) for v in range(g.n)]
        parent = [None] * g.n
        height = [1] * g.n
        for v in reversed(order):
            up = [x for x in nbrs[v] if pos[x] < pos[v]]
            if up:
                p = max(up, key=lambda x: pos[x])
                parent[v] = p
                nbrs[p] |= set(up) - {p}
        for v in order:
            if parent[v] is not None:
                height[v] = height[parent[v]] + 1
        best = min(best, max(height, default=0))
    return best


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_clique(n):
    value, dec = treedepth_exact(complete_graph(n))
    assert value == n and dec.height == n and dec.is_valid_for(complete_graph(n))


def test_small_examples():
    assert treedepth_exact(cycle_graph(4))[0] == 3
    assert treedepth_exact(path_graph(4))[0] == 3
    assert treedepth_exact(path_graph(7))[0] == 3
    assert treedepth_exact(mg(3))[0] == 1
    assert treedepth_exact(mg(0))[0] == 0


@pytest.mark.parametrize("n", range(3, 17))
def test_cycles(n):
    value, dec = treedepth_exact(cycle_graph(n))
    assert value == 1 + ceil_log2(n)
    assert dec.is_valid_for(cycle_graph(n)) and dec.height == value


def test_budget_is_loud():
    with pytest.raises(BudgetExceeded):
        treedepth_exact(path_graph(17))


@given(multigraphs(max_n=6, max_m=9))
@settings(max_examples=40)
def test_exact_matches_elimination_orders(g):
    value, dec = treedepth_exact(g)
    assert value == treedepth_by_orders(g)
    assert dec.is_valid_for(g) and dec.height == value


@given(multigraphs(min_n=2, max_n=7, max_m=10).filter(lambda g: g.size > 0))
@settings(max_examples=40)
def test_minor_monotone(g):
    td = treedepth_exact(g)[0]
    for e in range(g.size):
        assert treedepth_exact(g.delete_edge(e))[0] <= td
        assert treedepth_exact(g.contract_edge(e))[0] <= td


def test_oracle_on_submasks():
    oracle = TreedepthOracle(cycle_graph(6))
    assert oracle.value(0b111111) == 4
    assert oracle.value(0b000111) == 2
    assert oracle.value(0b010101) == 1


def test_decomposition_validation():
    assert not TdDecomposition((None, None)).is_valid_for(path_graph(2))
    assert TdDecomposition((None, 0)).is_valid_for(path_graph(2))
    assert not TdDecomposition((1, 0)).is_valid_for(path_graph(2))


@pytest.mark.parametrize("q, p", [(1, 3), (2, 2), (2, 3), (3, 2), (2, 4)])
def test_tree_closure_depth(q, p):
    assert treedepth_exact(gen_tree_closure(q, p))[0] == p


# -- longest cycles -------------------------------------------------------------


def test_longest_cycle_examples():
    assert longest_cycle(cycle_graph(6)) == 6
    assert longest_cycle(bowtie()) == 3
    assert longest_cycle(complete_graph(4)) == 4
    assert longest_cycle(path_graph(5)) == 0


# -- cycle family -----------------------------------------------------------------


def test_family_on_cycle():
    g = cycle_graph(7)
    fam = dfs_cycle_family(g)
    assert fam.k == 1
    assert sorted(fam.fundamental[0].edges) == list(range(7))
    assert fam.symmetric_difference == fam.fundamental[0]
    assert fam.double_cover(g)


@pytest.mark.parametrize("g", [complete_graph(4), complete_graph(5), theta_graph(3, 2)], ids=["K4", "K5", "theta"])
def test_family_inequalities(g):
    fam = dfs_cycle_family(g)
    L = longest_cycle(g)
    h, k = fam.tree_path_length, fam.k
    assert fam.double_cover(g)
    assert 2 * (h + k - 1) <= fam.length_sum() <= (k + 1) * L
    assert 2 * h <= (k + 1) * (L - 2) + 4
    assert fam.rule == "least-vertex"


def test_theta_has_longest_cycle_four():
    g = theta_graph(3, 2)
    assert (g.n, g.size) == (5, 6) and longest_cycle(g) == 4


def test_family_needs_two_connectivity():
    with pytest.raises(ValueError):
        dfs_cycle_family(bowtie())


@given(multigraphs(min_n=2, max_n=7, max_m=11, connected=True).filter(is_two_connected))
@settings(max_examples=40)
def test_family_double_cover_and_bounds(g):
    fam = dfs_cycle_family(g)
    assert fam.double_cover(g)
    L = longest_cycle(g)
    h, k = fam.tree_path_length, fam.k
    assert 2 * (h + k - 1) <= fam.length_sum()
    assert 2 * h <= (k + 1) * (L - 2) + 4
    for c in fam.fundamental + (fam.symmetric_difference,):
        assert c.is_valid_in(g)


# -- bounds ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "g, L, td, lo, hi",
    [(cycle_graph(8), 8, 4, 4, 23), (complete_graph(4), 4, 4, 3, 5), (complete_graph(5), 5, 5, 4, 8)],
    ids=["C8", "K4", "K5"],
)
def test_bounds_examples(g, L, td, lo, hi):
    rep = check_td_cycle_bounds(g)
    assert (rep.L, rep.td, rep.lower, rep.upper) == (L, td, lo, hi)
    assert rep.holds and rep.to_json()["lower_slack"] == td - lo


def test_bound_formula():
    assert td_cycle_bounds(2) == (2, 2)
    assert td_cycle_bounds(16) == (5, 107)


@given(multigraphs(min_n=2, max_n=7, max_m=11, connected=True).filter(is_two_connected))
@settings(max_examples=40)
def test_bounds_hold(g):
    assert check_td_cycle_bounds(g).holds


# -- adversarial closure ------------------------------------------------------------


def test_binary_closure_has_four_cycle_through_comparable_vertices():
    g = gen_tree_closure(2, 3)
    cyc = closure_long_cycle(2, 3)
    assert cyc is not None and len(cyc) == 4 and cyc.is_valid_in(g)
    # in a closure every edge joins an ancestor to a descendant
    _, dec = treedepth_exact(g)
    assert dec.is_valid_for(g)


def test_closure_has_no_cycle_longer_than_vertices():
    assert closure_long_cycle(2, 2, length=4) is None
