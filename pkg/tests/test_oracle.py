from fractions import Fraction

import pytest
from hypothesis import given, settings

from bffind.density import AggregateKind, aggregate_density
from bffind.graph_model import GraphHistory
from bffind.oracle import BudgetError, OracleBudget, brute_force_bff, brute_force_o2bff, dcs_baseline
from bffind.peeling import find_bff
from bffind.synthetic import prop4_instance
from conftest import clique, histories, random_history


def test_k4_with_isolated(k4_plus_isolated):
    sol = brute_force_bff(k4_plus_isolated, "mm")
    assert sol.nodes == (0, 1, 2, 3) and sol.score == 3


def test_single_edge_aa():
    sol = brute_force_bff(GraphHistory.from_edge_lists(2, [[(0, 1)]]), "aa")
    assert sol.nodes == (0, 1) and sol.score == 1


def test_prop4_am_optimum():
    h, clique_nodes = prop4_instance(10, 4)
    sol = brute_force_bff(h, "am")
    assert sol.score == 6 and sol.nodes == clique_nodes


def test_ties_to_smallest_tuple():
    h = GraphHistory.from_edge_lists(6, [[(0, 1), (2, 3), (4, 5)]])
    # every union of the three edges has average degree 1
    assert brute_force_bff(h, "aa").nodes == (0, 1)


def test_budget():
    h = random_history(12, 2, 0.3, 0)
    with pytest.raises(BudgetError):
        brute_force_bff(h, "mm", OracleBudget(max_nodes=10))
    with pytest.raises(BudgetError):
        brute_force_o2bff(h, "mm", 1, OracleBudget(max_snapshot_choose=1))


def test_o2_k5_middle():
    k5 = clique(range(5))
    h = GraphHistory.from_edge_lists(8, [[], k5, k5, k5, [], []])
    sol = brute_force_o2bff(h, "mm", 3)
    assert (sol.nodes, sol.snapshots, sol.score) == (tuple(range(5)), (1, 2, 3), 4)


@settings(max_examples=40, deadline=None)
@given(histories(max_n=7, max_tau=3))
def test_o2_full_k_equals_bff(h):
    for kind in AggregateKind:
        a, b = brute_force_o2bff(h, kind, h.tau), brute_force_bff(h, kind)
        assert (a.nodes, a.score) == (b.nodes, b.score)


@settings(max_examples=40, deadline=None)
@given(histories(max_n=7, max_tau=3))
def test_oracle_matches_exhaustive_fraction_loop(h):
    # independent scalar evaluation over every subset
    for kind in AggregateKind:
        best = max(
            aggregate_density(kind, [u for u in range(h.n) if m >> u & 1], h) for m in range(1, 1 << h.n)
        )
        assert brute_force_bff(h, kind).score == best


def test_dcs_identical_clique_snapshots():
    h = GraphHistory.from_edge_lists(7, [clique(range(4))] * 3)
    sol = dcs_baseline(h)
    assert sol.nodes == (0, 1, 2, 3) and sol.score == 3
    assert sol.kind is AggregateKind.MA and sol.meta["inner"] == "greedy-peel"


@settings(max_examples=30, deadline=None)
@given(histories(max_n=8, max_tau=3))
def test_dcs_score_recomputable(h):
    sol = dcs_baseline(h)
    assert aggregate_density(AggregateKind.MA, sol.nodes, h) == sol.score
    assert sol.score <= brute_force_bff(h, "ma").score


@settings(max_examples=40, deadline=None)
@given(histories(max_n=10, max_tau=1))
def test_inner_single_snapshot_peel_half_approx(h):
    inner = find_bff(h, "aa", "avg").score
    assert 2 * inner >= brute_force_bff(h, "aa").score
    assert isinstance(inner, Fraction)
