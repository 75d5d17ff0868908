import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from bffind.graph_model import GraphHistory


def random_history(n: int, tau: int, p: float, seed: int) -> GraphHistory:
    rng = np.random.default_rng(seed)
    lists = []
    for _ in range(tau):
        iu, ju = np.triu_indices(n, 1)
        keep = rng.random(len(iu)) < p
        lists.append(list(zip(iu[keep].tolist(), ju[keep].tolist())))
    return GraphHistory.from_edge_lists(n, lists)


def clique(nodes):
    nodes = list(nodes)
    return [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]


@st.composite
def histories(draw, max_n=8, max_tau=4):
    n = draw(st.integers(1, max_n))
    tau = draw(st.integers(1, max_tau))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    lists = [draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else [] for _ in range(tau)]
    return GraphHistory.from_edge_lists(n, lists)


@st.composite
def history_and_subset(draw, max_n=8, max_tau=4):
    h = draw(histories(max_n, max_tau))
    S = draw(st.sets(st.integers(0, h.n - 1), min_size=1))
    return h, S


@pytest.fixture
def k4_plus_isolated():
    """Three identical snapshots: K4 on 0..3, nodes 4 and 5 isolated."""
    return GraphHistory.from_edge_lists(6, [clique(range(4))] * 3)


def pytest_terminal_summary(terminalreporter):
    gate = sys.modules.get("test_acceptance")
    if gate is None or not gate.GATE_LINES:
        return
    terminalreporter.section("acceptance gate")
    for line in sorted(gate.GATE_LINES, key=lambda l: int(l.split()[2])):
        terminalreporter.write_line(line)
