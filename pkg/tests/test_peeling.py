import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bffind.density import AggregateKind, aggregate_density
from bffind.graph_model import EmptySetError, GraphHistory, build_average_graph
from bffind.oracle import brute_force_bff
from bffind.peeling import (
    AverageBuckets,
    DegreeBuckets,
    Scorer,
    find_bff,
    find_bff_query,
    lift,
    peel_step_avg,
    peel_step_greedy,
    peel_step_min,
    restrict_to_component,
)
from bffind.synthetic import prop4_instance
from conftest import clique, histories, random_history


def test_k4_with_isolated_nodes(k4_plus_isolated):
    sol = find_bff(k4_plus_isolated, "mm", "min")
    assert sol.nodes == (0, 1, 2, 3) and sol.score == 3
    assert sol.solver == "FindBFF-M"


def test_prop4_min_degree_peel_on_am():
    h, _ = prop4_instance(10, 4)
    assert find_bff(h, AggregateKind.AM, Scorer.MIN_DEGREE).score == 1


def test_random_mm_matches_oracle():
    h = random_history(8, 3, 0.4, seed=11)
    assert find_bff(h, "mm", "min").score == brute_force_bff(h, "mm").score


def test_edgeless_history_is_degenerate():
    h = GraphHistory.from_edge_lists(4, [[], []])
    for scorer in Scorer:
        sol = find_bff(h, "aa", scorer)
        assert sol.nodes == (0, 1, 2, 3) and sol.score == 0 and sol.meta["degenerate"]


def test_min_step_unique_minimum():
    # node 0 has degrees (1, 5); everyone else has at least 2 in both snapshots
    g0 = [(0, 1)] + clique(range(1, 6))
    g1 = [(0, v) for v in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)]
    b = DegreeBuckets(GraphHistory.from_edge_lists(6, [g0, g1]))
    assert b.argmin() == (1, 0)
    assert peel_step_min(b) == 0


def test_min_step_tie_goes_to_smallest_id():
    ring = [(i, (i + 1) % 5) for i in range(5)]
    b = DegreeBuckets(GraphHistory.from_edge_lists(5, [ring, ring]))
    assert peel_step_min(b) == 0
    assert peel_step_min(b) in (1, 4)


def test_min_step_empty_residual():
    b = DegreeBuckets(GraphHistory.from_edge_lists(1, [[]]))
    peel_step_min(b)
    with pytest.raises(EmptySetError):
        peel_step_min(b)


def test_avg_bucket_index_is_scaled():
    avg = build_average_graph(GraphHistory.from_edge_lists(3, [[(0, 1), (1, 2)], [(1, 2)]]))
    b = AverageBuckets(avg)
    assert b.w[0] == 1  # one edge of weight 1/2, times tau=2
    assert b.w[1] == 3


def test_avg_step_isolated_first_and_ties():
    avg = build_average_graph(GraphHistory.from_edge_lists(4, [[(1, 2), (2, 3), (1, 3)]]))
    b = AverageBuckets(avg)
    assert peel_step_avg(b) == 0
    assert peel_step_avg(b) == 1


def test_greedy_removes_pendant():
    h = GraphHistory.from_edge_lists(4, [clique(range(3)) + [(2, 3)]])
    assert peel_step_greedy(h, range(4), AggregateKind.MA) == 3


def test_greedy_symmetric_tie():
    h = GraphHistory.from_edge_lists(4, [clique(range(4))])
    assert peel_step_greedy(h, range(4), "ma") == 0
    with pytest.raises(EmptySetError):
        peel_step_greedy(h, [1], "ma")


def test_query_on_clique_matches_unconstrained(k4_plus_isolated):
    free = find_bff(k4_plus_isolated, "mm", "min")
    q = find_bff_query(k4_plus_isolated, "mm", "min", range(4))
    assert (q.nodes, q.score) == (free.nodes, free.score)
    assert q.solver == "Qr-FindBFF-M"


def test_query_isolated_node_min_stops_at_first_step(k4_plus_isolated):
    sol = find_bff_query(k4_plus_isolated, "mm", "min", [4])
    assert sol.meta["stopped_at"] == 1
    assert sol.nodes == tuple(range(6)) and sol.score == 0


def test_query_errors(k4_plus_isolated):
    with pytest.raises(IndexError):
        find_bff_query(k4_plus_isolated, "mm", "min", [9])
    with pytest.raises(ValueError):
        find_bff_query(k4_plus_isolated, "mm", "greedy", [0])
    with pytest.raises(EmptySetError):
        find_bff_query(k4_plus_isolated, "mm", "min", [])


def _query_optimum(h, Q):
    """Best f_aa over all supersets of Q."""
    rest = [u for u in range(h.n) if u not in Q]
    best = None
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            S = set(Q) | set(extra)
            val = aggregate_density(AggregateKind.AA, S, h)
            if best is None or val > best[0]:
                best = (val, S)
    return best


def _check_query_bound(h, Q):
    sol = find_bff_query(h, "aa", "avg", Q)
    assert set(Q) <= set(sol.nodes)
    opt, S_star = _query_optimum(h, Q)
    avg = build_average_graph(h)
    q, s = len(Q), len(S_star - set(Q))
    # edges between two query nodes are dropped before the bound is taken
    omega = sum(Fraction(c, h.tau) for u in Q for v, c in avg.adj[u] if v in S_star and v not in Q)
    assert sol.score >= (s * opt + 2 * omega) / (2 * (s + q))


def test_query_avg_bound_isolated(k4_plus_isolated):
    _check_query_bound(k4_plus_isolated, [4])


@settings(max_examples=60, deadline=None)
@given(histories(max_n=7), st.data())
def test_query_avg_bound(h, data):
    Q = data.draw(st.sets(st.integers(0, h.n - 1), min_size=1, max_size=3))
    _check_query_bound(h, Q)


def _two_triangles(tau=2):
    return GraphHistory.from_edge_lists(6, [clique(range(3)) + clique(range(3, 6))] * tau)


def test_component_restriction():
    h = _two_triangles()
    sub = restrict_to_component(h, [1])
    assert sub.n == 3 and sub.origin == (0, 1, 2)
    assert restrict_to_component(h, [0, 4]).n == 6
    path = GraphHistory.from_edge_lists(3, [[(0, 1)], [(1, 2)]])
    assert restrict_to_component(path, [0]).n == 3


def test_lift_restores_ids():
    h = _two_triangles()
    sub = restrict_to_component(h, [4])
    sol = lift(find_bff_query(sub, "mm", "min", [sub.origin.index(4)]), sub)
    assert sol.nodes == (3, 4, 5) and sol.score == 2


@settings(max_examples=80, deadline=None)
@given(histories(max_n=9))
def test_mm_optimal_and_aa_half(h):
    assert find_bff(h, "mm", "min").score == brute_force_bff(h, "mm").score
    assert 2 * find_bff(h, "aa", "avg").score >= brute_force_bff(h, "aa").score


@settings(max_examples=80, deadline=None)
@given(histories(max_n=9), st.sampled_from(list(AggregateKind)), st.sampled_from(list(Scorer)))
def test_score_is_recomputable(h, kind, scorer):
    sol = find_bff(h, kind, scorer)
    assert aggregate_density(kind, sol.nodes, h) == sol.score
    assert len(sol.removal_order) == h.n - 1
    assert find_bff(h, kind, scorer).removal_order == sol.removal_order


@settings(max_examples=60, deadline=None)
@given(histories(max_n=10))
def test_buckets_track_degrees_and_work(h):
    b = DegreeBuckets(h)
    while b.size:
        b.audit()
        peel_step_min(b)
    assert b.moves <= h.total_edges * 2
    avg = AverageBuckets(build_average_graph(h))
    while avg.queued:
        peel_step_avg(avg)
    assert avg.moves <= 2 * h.total_edges
