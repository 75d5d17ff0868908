"""Exhaustive reference solvers and the DCS baseline.

The brute-force oracles enumerate node subsets as bitmasks and evaluate
every snapshot with numpy, independently of the peeling code.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .density import AggregateKind, DensityKind, aggregate_density
from .graph_model import EmptyHistoryError, GraphHistory, induced_subhistory
from .o2bff import O2Solution
from .peeling import Scorer, Solution, find_bff


class BudgetError(RuntimeError):
    """Enumeration would exceed the oracle budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 20
    max_snapshot_choose: int = 2**20


_CHUNK = 1 << 18


def _snapshot_values(history: GraphHistory, kind: DensityKind, masks: np.ndarray):
    """Per-snapshot integer densities for every mask in ``masks``.

    Min-degree values are exact; average-degree values are returned as twice
    the edge count (the caller divides by the set size). The degree of ``u``
    inside mask ``S`` is ``popcount(S & nbrmask[u])``.
    """
    n = history.n
    member = [((masks >> u) & 1).astype(bool) for u in range(n)]
    out = []
    for snap in history.snapshots:
        acc = np.full(len(masks), n if kind is DensityKind.MIN_DEGREE else 0, dtype=np.int64)
        for u in range(n):
            nbrmask = sum(1 << v for v in snap.adj[u])
            deg = np.bitwise_count(masks & nbrmask).astype(np.int64)
            if kind is DensityKind.MIN_DEGREE:
                np.minimum(acc, np.where(member[u], deg, n), out=acc)
            else:
                acc += np.where(member[u], deg, 0)
        out.append(acc)
    return np.stack(out), np.bitwise_count(masks).astype(np.int64)


def _aggregate(kind: AggregateKind, vals: np.ndarray, sizes: np.ndarray):
    """Numerators and denominators of the aggregate density per mask."""
    tau = vals.shape[0]
    if kind.aggregator_is_min:
        num = vals.min(axis=0)
    else:
        num = vals.sum(axis=0)
    den = np.ones_like(num) if kind is AggregateKind.MM else np.full_like(num, tau)
    if kind.density is DensityKind.AVG_DEGREE:
        den = den * sizes if not kind.aggregator_is_min else sizes.copy()
    return num, den


def _mask_nodes(mask: int, n: int) -> tuple[int, ...]:
    return tuple(u for u in range(n) if mask >> u & 1)


def _best_in_chunk(num, den, masks, n):
    """Exact maximum among a chunk, ties to the lexicographically smallest
    node tuple. Floats only pre-filter candidates."""
    approx = num / den
    top = approx.max()
    cand = np.nonzero(approx >= top - 1e-9 * max(1.0, abs(top)))[0]
    best = None
    for i in cand:
        val = Fraction(int(num[i]), int(den[i]))
        nodes = _mask_nodes(int(masks[i]), n)
        if best is None or val > best[0] or (val == best[0] and nodes < best[1]):
            best = (val, nodes)
    return best


def _better(a, b) -> bool:
    return b is None or a[0] > b[0] or (a[0] == b[0] and a[1:] < b[1:])


def _check_budget(history: GraphHistory, budget: OracleBudget) -> None:
    if history.n == 0:
        raise EmptyHistoryError("history has no nodes")
    if history.n > budget.max_nodes:
        raise BudgetError(f"n={history.n} exceeds oracle budget of {budget.max_nodes} nodes")


def _chunks(n: int):
    total = 1 << n
    for start in range(1, total, _CHUNK):
        yield np.arange(start, min(total, start + _CHUNK), dtype=np.int64)


def brute_force_bff(history: GraphHistory, kind, budget: OracleBudget = OracleBudget()) -> Solution:
    """Maximum aggregate density over all non-empty node subsets."""
    kind = AggregateKind.parse(kind)
    _check_budget(history, budget)
    best = None
    for masks in _chunks(history.n):
        vals, sizes = _snapshot_values(history, kind.density, masks)
        num, den = _aggregate(kind, vals, sizes)
        cand = _best_in_chunk(num, den, masks, history.n)
        if _better(cand, best):
            best = cand
    return Solution(best[1], best[0], kind, -1, (), "brute-force")


def brute_force_o2bff(history: GraphHistory, kind, k: int, budget: OracleBudget = OracleBudget()) -> O2Solution:
    """Maximum over all (node subset, k-subset of snapshots) pairs; ties go
    to the smallest node tuple, then the smallest snapshot tuple."""
    kind = AggregateKind.parse(kind)
    _check_budget(history, budget)
    if not 1 <= k <= history.tau:
        raise ValueError(f"k={k} outside [1, {history.tau}]")
    if math.comb(history.tau, k) > budget.max_snapshot_choose:
        raise BudgetError(f"C({history.tau},{k}) exceeds the snapshot enumeration budget")
    best = None
    for masks in _chunks(history.n):
        vals, sizes = _snapshot_values(history, kind.density, masks)
        for combo in itertools.combinations(range(history.tau), k):
            num, den = _aggregate(kind, vals[list(combo)], sizes)
            val, nodes = _best_in_chunk(num, den, masks, history.n)
            cand = (val, nodes, combo)
            if _better(cand, best):
                best = cand
    return O2Solution(best[1], best[2], best[0], kind, "brute-force")


def dcs_baseline(history: GraphHistory) -> Solution:
    """DCS peeling for the min-over-time average-degree objective.

    Each step finds a dense subgraph in every snapshot (greedy average-degree
    peeling on the residual nodes), picks the snapshot whose dense subgraph
    is sparsest, and deletes the residual node of smallest degree in that
    snapshot from the whole history. Per-snapshot subgraphs are recomputed
    every step.
    """
    n = history.n
    if n == 0:
        raise EmptyHistoryError("history has no nodes")
    kind = AggregateKind.MA
    alive = list(range(n))
    best = (aggregate_density(kind, alive, history), 0)
    order: list[int] = []
    for i in range(1, n):
        sub = induced_subhistory(history, alive)
        pick = None
        for t in range(sub.tau):
            inner = find_bff(sub.select([t]), AggregateKind.AA, Scorer.AVG_DEGREE)
            if pick is None or inner.score < pick[0]:
                pick = (inner.score, t, inner.nodes)
        snap = sub.snapshots[pick[1]]
        v = min(range(sub.n), key=lambda u: (snap.degree(u), u))
        removed = sub.origin[v]
        order.append(removed)
        alive.remove(removed)
        val = aggregate_density(kind, alive, history)
        if val > best[0]:
            best = (val, i)
    gone = set(order[: best[1]])
    nodes = tuple(u for u in range(n) if u not in gone)
    return Solution(nodes, best[0], kind, best[1], tuple(order), "DCS", {"inner": "greedy-peel"})
