from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bffind.density import (
    AggregateKind,
    DensityKind,
    aggregate,
    aggregate_density,
    density,
    density_on_average_graph,
)
from bffind.graph_model import EmptySetError, GraphHistory, Snapshot, build_average_graph
from conftest import clique, history_and_subset

K4 = Snapshot.from_edges(4, clique(range(4)))


def test_k4_density():
    assert density(DensityKind.AVG_DEGREE, range(4), K4) == 3
    assert density(DensityKind.MIN_DEGREE, range(4), K4) == 3


@pytest.mark.parametrize("kind", list(DensityKind))
def test_single_node_zero(kind):
    assert density(kind, [2], K4) == 0


def test_eight_edges_on_five_nodes():
    # K4 on 0..3 plus node 4 tied to 0 and 1
    snap = Snapshot.from_edges(5, clique(range(4)) + [(4, 0), (4, 1)])
    assert density(DensityKind.AVG_DEGREE, range(5), snap) == Fraction(16, 5)
    assert density(DensityKind.MIN_DEGREE, range(5), snap) == 2


def test_empty_set_is_error():
    with pytest.raises(EmptySetError):
        density(DensityKind.AVG_DEGREE, [], K4)
    h = GraphHistory(4, (K4,))
    with pytest.raises(EmptySetError):
        aggregate_density(AggregateKind.MM, [], h)
    with pytest.raises(EmptySetError):
        density_on_average_graph([], build_average_graph(h))


def test_constant_clique_all_kinds():
    h = GraphHistory.from_edge_lists(6, [clique(range(4))] * 3)
    for kind in AggregateKind:
        assert aggregate_density(kind, range(4), h) == 3


def test_min_degree_sequence_2221():
    # 5-cycle in every snapshot; in the last one node 4 loses one edge
    ring = [(i, (i + 1) % 5) for i in range(5)]
    h = GraphHistory.from_edge_lists(5, [ring] * 3 + [ring[:-1]])
    assert aggregate_density(AggregateKind.MM, range(5), h) == 1
    assert aggregate_density(AggregateKind.AM, range(5), h) == Fraction(7, 4)


def test_min_of_two_rationals():
    assert aggregate([Fraction(3), Fraction(16, 5)], use_min=True) == 3
    assert aggregate([Fraction(3), Fraction(16, 5)], use_min=False) == Fraction(31, 10)


def test_average_graph_density_examples():
    h = GraphHistory.from_edge_lists(2, [[(0, 1)], []])
    assert density_on_average_graph({0, 1}, build_average_graph(h)) == Fraction(1, 2)
    h = GraphHistory.from_edge_lists(4, [clique(range(4))] * 2)
    assert density_on_average_graph(range(4), build_average_graph(h)) == 3


def test_kind_parsing():
    assert AggregateKind.parse("AM") is AggregateKind.AM
    assert AggregateKind.AM.aggregator_is_min is False
    assert AggregateKind.AM.density is DensityKind.MIN_DEGREE
    with pytest.raises(ValueError):
        AggregateKind.parse("xx")


@settings(max_examples=100, deadline=None)
@given(history_and_subset())
def test_ordering_and_average_graph_identity(hs):
    h, S = hs
    for snap in h.snapshots:
        assert density(DensityKind.MIN_DEGREE, S, snap) <= density(DensityKind.AVG_DEGREE, S, snap)
    f = {k: aggregate_density(k, S, h) for k in AggregateKind}
    assert f[AggregateKind.MM] <= min(f[AggregateKind.MA], f[AggregateKind.AM])
    assert max(f[AggregateKind.MA], f[AggregateKind.AM]) <= f[AggregateKind.AA]
    assert f[AggregateKind.AA] == density_on_average_graph(S, build_average_graph(h))


@settings(max_examples=60, deadline=None)
@given(history_and_subset(), st.data())
def test_edge_removal_never_increases(hs, data):
    h, S = hs
    t = data.draw(st.integers(0, h.tau - 1))
    edges = h.snapshots[t].edges()
    if not edges:
        return
    drop = data.draw(st.sampled_from(edges))
    smaller = Snapshot.from_edges(h.n, [e for e in edges if e != drop])
    for kind in DensityKind:
        assert density(kind, S, smaller) <= density(kind, S, h.snapshots[t])
