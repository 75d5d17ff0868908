"""Greedy peeling for the BFF problem.

A peel starts from all nodes and removes one node per step, choosing the node
with the smallest score; the best intermediate set under the target
aggregate density is returned. Three scorers are available:

* ``MIN_DEGREE`` - minimum degree of the node over the snapshots. Optimal
  for the min-of-min-degree objective.
* ``AVG_DEGREE`` - degree in the average graph. A 1/2-approximation for the
  average-of-average-degree objective.
* ``GREEDY`` - the node whose removal leaves the best objective value.

The first two run in O(n*tau + M) bucket moves, where M is the total number
of edges over all snapshots. Each degree bucket is a min-heap of node ids with
lazy deletion, so ties always go to the smallest id.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heappop, heappush
from typing import Iterable

from .density import AggregateKind, DensityKind
from .graph_model import (
    AverageGraph,
    EmptyHistoryError,
    EmptySetError,
    GraphHistory,
    build_average_graph,
    induced_subhistory,
)


class Scorer(enum.Enum):
    MIN_DEGREE = "min"
    AVG_DEGREE = "avg"
    GREEDY = "greedy"

    @classmethod
    def parse(cls, text: "str | Scorer") -> "Scorer":
        if isinstance(text, cls):
            return text
        return cls(str(text).lower())


SOLVER_NAMES = {
    Scorer.MIN_DEGREE: "FindBFF-M",
    Scorer.AVG_DEGREE: "FindBFF-A",
    Scorer.GREEDY: "FindBFF-G",
}


def default_scorer(kind: AggregateKind) -> Scorer:
    """Min-degree peeling for MM, average-graph peeling otherwise (the best
    performer for MA and AM on the real datasets the method was tested on)."""
    return Scorer.MIN_DEGREE if AggregateKind.parse(kind) is AggregateKind.MM else Scorer.AVG_DEGREE


@dataclass(frozen=True)
class Solution:
    nodes: tuple[int, ...]
    score: Fraction
    kind: AggregateKind
    peel_index: int
    removal_order: tuple[int, ...] = ()
    solver: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.nodes)


class DegreeBuckets:
    """Per-snapshot degree buckets over a shrinking node set.

    ``degree(t, u)`` is the degree of ``u`` in snapshot ``t`` restricted to the
    residual set, and ``u`` sits in bucket ``degree(t, u)`` of snapshot ``t``.
    ``moves`` counts neighbour repositionings.
    """

    def __init__(self, history: GraphHistory, nodes: Iterable[int] | None = None):
        n = history.n
        if nodes is None:
            members = list(range(n))
            alive = bytearray(b"\x01") * n
        else:
            members = sorted(set(nodes))
            alive = bytearray(n)
            for u in members:
                alive[u] = 1
        self.n = n
        self.tau = history.tau
        self.alive = alive
        self.size = len(members)
        self.moves = 0
        self._adj = [s.adj for s in history.snapshots]
        self.deg: list[list[int]] = []
        self.count: list[list[int]] = []
        self.edges: list[int] = []
        self._buckets: list[list[list[int]]] = []
        self._dmin: list[int] = []
        full = nodes is None
        for adj in self._adj:
            if full:
                deg = [len(a) for a in adj]
            else:
                deg = [0] * n
                for u in members:
                    deg[u] = sum(alive[v] for v in adj[u])
            top = max((deg[u] for u in members), default=0)
            buckets: list[list[int]] = [[] for _ in range(top + 1)]
            for u in members:  # ascending ids, so each bucket is already a heap
                buckets[deg[u]].append(u)
            self.deg.append(deg)
            self.count.append([len(b) for b in buckets])
            self.edges.append(sum(deg[u] for u in members) // 2)
            self._buckets.append(buckets)
            self._dmin.append(0)

    def min_degree(self, t: int) -> int:
        """Smallest degree present in snapshot ``t`` (residual must be non-empty)."""
        if self.size == 0:
            raise EmptySetError("residual node set is empty")
        cnt = self.count[t]
        d = self._dmin[t]
        while cnt[d] == 0:
            d += 1
        self._dmin[t] = d
        return d

    def _top(self, t: int, d: int) -> int:
        heap = self._buckets[t][d]
        deg = self.deg[t]
        alive = self.alive
        while True:
            u = heap[0]
            if alive[u] and deg[u] == d:
                return u
            heappop(heap)

    def members(self, t: int, d: int) -> list[int]:
        if d >= len(self._buckets[t]):
            return []
        deg = self.deg[t]
        return sorted({u for u in self._buckets[t][d] if self.alive[u] and deg[u] == d})

    def argmin(self) -> tuple[int, int]:
        """``(score, node)`` of the node with the smallest minimum degree."""
        best = None
        for t in range(self.tau):
            d = self.min_degree(t)
            if best is None or d < best[0]:
                best = (d, self._top(t, d))
            elif d == best[0]:
                u = self._top(t, d)
                if u < best[1]:
                    best = (d, u)
        return best

    def remove(self, u: int) -> None:
        if not self.alive[u]:
            raise KeyError(f"node {u} is not in the residual set")
        alive = self.alive
        alive[u] = 0
        self.size -= 1
        moves = 0
        for t, adj in enumerate(self._adj):
            deg = self.deg[t]
            cnt = self.count[t]
            buckets = self._buckets[t]
            cnt[deg[u]] -= 1
            self.edges[t] -= deg[u]
            dmin = self._dmin[t]
            for v in adj[u]:
                if alive[v]:
                    dv = deg[v]
                    cnt[dv] -= 1
                    dv -= 1
                    deg[v] = dv
                    cnt[dv] += 1
                    heappush(buckets[dv], v)
                    moves += 1
                    if dv < dmin:
                        dmin = dv
            self._dmin[t] = dmin
        self.moves += moves

    def pop_min(self) -> int:
        score, u = self.argmin()
        self.remove(u)
        return u

    def audit(self) -> None:
        """Recount every residual degree and check bucket placement."""
        for t, adj in enumerate(self._adj):
            deg = self.deg[t]
            hist: dict[int, int] = {}
            for u in range(self.n):
                if not self.alive[u]:
                    continue
                true = sum(self.alive[v] for v in adj[u])
                if deg[u] != true:
                    raise AssertionError(f"snapshot {t}: node {u} has degree {true}, bucket {deg[u]}")
                if u not in self._buckets[t][true]:
                    raise AssertionError(f"snapshot {t}: node {u} missing from bucket {true}")
                hist[true] = hist.get(true, 0) + 1
            for d, c in enumerate(self.count[t]):
                if c != hist.get(d, 0):
                    raise AssertionError(f"snapshot {t}: bucket {d} holds {c}, expected {hist.get(d, 0)}")


class AverageBuckets:
    """Buckets over the average graph, indexed by weighted degree times tau.

    Only ``eligible`` nodes are queued for removal; the rest still count
    toward degrees and the total weight.
    """

    def __init__(self, avg: AverageGraph, eligible: Iterable[int] | None = None):
        n = avg.n
        self.n = n
        self.tau = avg.tau
        self.alive = bytearray(b"\x01") * n
        self.size = n
        self.moves = 0
        self._adj = avg.adj
        if eligible is None:
            self.eligible = bytearray(b"\x01") * n
        else:
            self.eligible = bytearray(n)
            for u in eligible:
                self.eligible[u] = 1
        self.queued = sum(self.eligible)
        self.w = [sum(c for _, c in a) for a in avg.adj]
        self.total = sum(self.w)
        top = max(self.w, default=0)
        self._buckets: list[list[int]] = [[] for _ in range(top + 1)]
        self.count = [0] * (top + 1)
        for u in range(n):
            if self.eligible[u]:
                self._buckets[self.w[u]].append(u)
                self.count[self.w[u]] += 1
        self._dmin = 0

    def min_scaled_degree(self) -> int:
        if self.queued == 0:
            raise EmptySetError("no removable nodes left")
        d = self._dmin
        while self.count[d] == 0:
            d += 1
        self._dmin = d
        return d

    def argmin(self) -> tuple[int, int]:
        d = self.min_scaled_degree()
        heap = self._buckets[d]
        while True:
            u = heap[0]
            if self.alive[u] and self.w[u] == d:
                return d, u
            heappop(heap)

    def remove(self, u: int) -> None:
        if not self.alive[u]:
            raise KeyError(f"node {u} is not in the residual set")
        alive, w, eligible, cnt = self.alive, self.w, self.eligible, self.count
        alive[u] = 0
        self.size -= 1
        if eligible[u]:
            cnt[w[u]] -= 1
            self.queued -= 1
        self.total -= 2 * w[u]
        dmin = self._dmin
        moves = 0
        for v, c in self._adj[u]:
            if alive[v]:
                wv = w[v]
                w[v] = wv - c
                if eligible[v]:
                    cnt[wv] -= 1
                    cnt[wv - c] += 1
                    heappush(self._buckets[wv - c], v)
                    moves += 1
                    if wv - c < dmin:
                        dmin = wv - c
        self._dmin = dmin
        self.moves += moves

    def pop_min(self) -> int:
        _, u = self.argmin()
        self.remove(u)
        return u


def peel_step_min(buckets: DegreeBuckets) -> int:
    """Remove and return the node with the smallest minimum degree."""
    if buckets.size == 0:
        raise EmptySetError("residual node set is empty")
    return buckets.pop_min()


def peel_step_avg(buckets: AverageBuckets) -> int:
    """Remove and return the node with the smallest average-graph degree."""
    if buckets.queued == 0:
        raise EmptySetError("residual node set is empty")
    return buckets.pop_min()


# objective values are kept as (numerator, denominator) integer pairs inside
# the peel loop and compared by cross-multiplication

def _objective(kind: AggregateKind, tracker, size: int, tau: int) -> tuple[int, int]:
    if isinstance(tracker, AverageBuckets):
        return tracker.total, tau * size
    if kind is AggregateKind.MM:
        return min(tracker.min_degree(t) for t in range(tau)), 1
    if kind is AggregateKind.AM:
        return sum(tracker.min_degree(t) for t in range(tau)), tau
    if kind is AggregateKind.MA:
        return 2 * min(tracker.edges), size
    return 2 * sum(tracker.edges), tau * size


def _greedy_choice(tracker: DegreeBuckets, kind: AggregateKind) -> int:
    """The residual node whose removal leaves the largest objective."""
    tau = tracker.tau
    alive = tracker.alive
    s = tracker.size - 1
    if s < 1:
        raise EmptySetError("greedy step needs at least two residual nodes")
    use_min = kind.density is DensityKind.MIN_DEGREE
    levels = []
    if use_min:
        for t in range(tau):
            cnt = tracker.count[t]
            levels.append([d for d in range(tracker.min_degree(t), len(cnt)) if cnt[d]])
    best = None
    best_u = -1
    for u in range(tracker.n):
        if not alive[u]:
            continue
        vals = []
        for t in range(tau):
            deg = tracker.deg[t]
            if use_min:
                excl = {deg[u]: 1}
                nbr_min = None
                for v in tracker._adj[t][u]:
                    if alive[v]:
                        dv = deg[v]
                        excl[dv] = excl.get(dv, 0) + 1
                        if nbr_min is None or dv - 1 < nbr_min:
                            nbr_min = dv - 1
                cnt = tracker.count[t]
                rest = None
                for d in levels[t]:
                    if cnt[d] > excl.get(d, 0):
                        rest = d
                        break
                cands = [x for x in (rest, nbr_min) if x is not None]
                vals.append(min(cands))
            else:
                vals.append(2 * (tracker.edges[t] - deg[u]))
        if kind.aggregator_is_min:
            num = min(vals)
            den = 1 if use_min else s
        else:
            num = sum(vals)
            den = tau if use_min else tau * s
        if best is None or num * best[1] > best[0] * den:
            best = (num, den)
            best_u = u
    return best_u


def peel_step_greedy(history: GraphHistory, residual: Iterable[int], target: AggregateKind) -> int:
    """Return the node of ``residual`` whose removal leaves the best target
    value (the node is not removed from anything; histories are immutable)."""
    res = set(residual)
    if len(res) < 2:
        raise EmptySetError("greedy step needs at least two residual nodes")
    return _greedy_choice(DegreeBuckets(history, res), AggregateKind.parse(target))


def _peel(
    history: GraphHistory,
    kind: AggregateKind,
    scorer: Scorer,
    query: frozenset[int] = frozenset(),
) -> Solution:
    n, tau = history.n, history.tau
    if n == 0:
        raise EmptyHistoryError("history has no nodes")
    kind = AggregateKind.parse(kind)
    scorer = Scorer.parse(scorer)
    if scorer is Scorer.AVG_DEGREE:
        eligible = [u for u in range(n) if u not in query] if query else None
        selector = AverageBuckets(build_average_graph(history), eligible)
        tracker = selector if kind is AggregateKind.AA else DegreeBuckets(history)
    else:
        selector = tracker = DegreeBuckets(history)

    best = _objective(kind, tracker, n, tau)
    best_i = 0
    order: list[int] = []
    stopped = None
    for i in range(1, n):
        if scorer is Scorer.MIN_DEGREE:
            _, v = selector.argmin()
            if v in query:
                stopped = i
                break
        elif scorer is Scorer.AVG_DEGREE:
            if selector.queued == 0:
                stopped = i
                break
            _, v = selector.argmin()
        else:
            v = _greedy_choice(tracker, kind)
        selector.remove(v)
        if tracker is not selector:
            tracker.remove(v)
        order.append(v)
        val = _objective(kind, tracker, n - i, tau)
        if val[0] * best[1] > best[0] * val[1]:
            best, best_i = val, i
    removed = set(order[:best_i])
    nodes = tuple(u for u in range(n) if u not in removed)
    score = Fraction(best[0], best[1])
    name = SOLVER_NAMES[scorer]
    meta = {"moves": selector.moves + (tracker.moves if tracker is not selector else 0)}
    if query:
        name = "Qr-" + name
        meta["stopped_at"] = stopped
    if score == 0:
        meta["degenerate"] = True
    return Solution(nodes, score, kind, best_i, tuple(order), name, meta)


def find_bff(history: GraphHistory, kind: AggregateKind | str, scorer: Scorer | str | None = None) -> Solution:
    """Peel ``history`` with ``scorer`` and return the densest intermediate set
    under ``kind``.

    Ties in the removal choice go to the smallest node id; ties between
    intermediate sets go to the earliest (largest) one. A history with no
    edges yields all nodes with score 0.
    """
    kind = AggregateKind.parse(kind)
    return _peel(history, kind, default_scorer(kind) if scorer is None else scorer)


def find_bff_query(
    history: GraphHistory,
    kind: AggregateKind | str,
    scorer: Scorer | str,
    query: Iterable[int],
) -> Solution:
    """Peel while keeping every node of ``query`` in the solution.

    With ``MIN_DEGREE`` the peel stops as soon as a query node would be
    removed; with ``AVG_DEGREE`` query nodes are skipped and the peel ends
    when only they remain.
    """
    Q = frozenset(query)
    if not Q:
        raise EmptySetError("query set is empty")
    if min(Q) < 0 or max(Q) >= history.n:
        raise IndexError(f"query nodes must lie in [0, {history.n})")
    scorer = Scorer.parse(scorer)
    if scorer is Scorer.GREEDY:
        raise ValueError("query-constrained peeling supports the min and avg scorers only")
    return _peel(history, AggregateKind.parse(kind), scorer, Q)


def component_of(history: GraphHistory, query: Iterable[int]) -> list[int]:
    """Nodes reachable from ``query`` in the union of all snapshots."""
    seen = set(query)
    todo = deque(seen)
    while todo:
        u = todo.popleft()
        for snap in history.snapshots:
            for v in snap.adj[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return sorted(seen)


def restrict_to_component(history: GraphHistory, query: Iterable[int]) -> GraphHistory:
    """Subhistory on the union-graph component(s) holding ``query``; the
    returned history's ``origin`` maps its ids back to ``history``."""
    Q = list(query)
    if not Q:
        raise EmptySetError("query set is empty")
    return induced_subhistory(history, component_of(history, Q))


def lift(solution: Solution, sub: GraphHistory) -> Solution:
    """Translate a solution on an induced subhistory back to parent ids."""
    if sub.origin is None:
        return solution
    o = sub.origin
    return Solution(
        tuple(sorted(o[u] for u in solution.nodes)),
        solution.score,
        solution.kind,
        solution.peel_index,
        tuple(o[u] for u in solution.removal_order),
        solution.solver,
        dict(solution.meta),
    )
