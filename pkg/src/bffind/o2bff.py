"""On-off BFF: pick k of the tau snapshots together with a node set.

Every solver here calls :func:`find_bff` on sub-collections of snapshots; the
node ids are shared with the full history.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .density import AggregateKind, DensityKind, aggregate_density, density
from .graph_model import EmptySetError, GraphHistory
from .peeling import Scorer, Solution, default_scorer, find_bff

log = logging.getLogger(__name__)


class InitKind(enum.Enum):
    RANDOM = "random"
    CONTIGUOUS = "contiguous"
    AT_LEAST_K = "at-least-k"


@dataclass(frozen=True)
class O2Solution:
    nodes: tuple[int, ...]
    snapshots: tuple[int, ...]
    score: Fraction
    kind: AggregateKind
    solver: str
    iterations: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.nodes)


def _check_k(history: GraphHistory, k: int, lowest: int = 1) -> None:
    if not lowest <= k <= history.tau:
        raise ValueError(f"k={k} outside [{lowest}, {history.tau}]")


def best_snapshots(S: Iterable[int], history: GraphHistory, k: int, kind: DensityKind) -> tuple[int, ...]:
    """Indices of the k snapshots where ``S`` is densest; ties favour earlier
    snapshots. The result is sorted."""
    _check_k(history, k)
    S = frozenset(S)
    if not S:
        raise EmptySetError("node set is empty")
    scored = sorted(range(history.tau), key=lambda i: (-density(kind, S, history.snapshots[i]), i))
    return tuple(sorted(scored[:k]))


def _solve_on(history, indices, kind, scorer) -> Solution:
    return find_bff(history.select(indices), kind, scorer)


def init_contiguous(history: GraphHistory, kind, k: int, scorer=None):
    """Best window of k consecutive snapshots and its peeled node set."""
    kind = AggregateKind.parse(kind)
    _check_k(history, k)
    best = None
    for start in range(history.tau - k + 1):
        idx = tuple(range(start, start + k))
        sol = _solve_on(history, idx, kind, scorer)
        if best is None or sol.score > best[2]:
            best = (idx, sol.nodes, sol.score)
    return best[0], best[1]


def init_at_least_k(history: GraphHistory, kind, k: int, scorer=None):
    """Nodes found densest in at least k single snapshots, with their best k
    snapshots. Returns an empty node set when no node qualifies."""
    kind = AggregateKind.parse(kind)
    _check_k(history, k)
    hits = [0] * history.n
    for t in range(history.tau):
        for u in _solve_on(history, (t,), kind, scorer).nodes:
            hits[u] += 1
    S0 = tuple(u for u in range(history.n) if hits[u] >= k)
    if not S0:
        return (), S0
    return best_snapshots(S0, history, k, kind.density), S0


def init_random(history: GraphHistory, kind, k: int, seed: int, scorer=None):
    kind = AggregateKind.parse(kind)
    _check_k(history, k)
    rng = np.random.default_rng(seed)
    idx = tuple(sorted(int(i) for i in rng.choice(history.tau, size=k, replace=False)))
    return idx, _solve_on(history, idx, kind, scorer).nodes


def o2bff_iterative(
    history: GraphHistory,
    kind,
    k: int,
    init: InitKind | str = InitKind.AT_LEAST_K,
    seed: int = 0,
    max_iters: int = 100,
    scorer: Scorer | str | None = None,
) -> O2Solution:
    """Alternate between choosing the k best snapshots for the current node
    set and re-peeling on those snapshots, until the score stops improving.

    The first re-solve always replaces the initial pair; after that a new
    pair is kept only on strict improvement, which also ends plateaus.
    """
    kind = AggregateKind.parse(kind)
    init = InitKind(init)
    _check_k(history, k)
    scorer = default_scorer(kind) if scorer is None else Scorer.parse(scorer)
    meta: dict = {}
    if init is InitKind.CONTIGUOUS:
        C, S = init_contiguous(history, kind, k, scorer)
    elif init is InitKind.AT_LEAST_K:
        C, S = init_at_least_k(history, kind, k, scorer)
        if not S:
            log.warning("at-least-k initialization is empty; falling back to random(seed=0)")
            meta["fallback"] = "random(seed=0)"
            C, S = init_random(history, kind, k, 0, scorer)
    else:
        C, S = init_random(history, kind, k, seed, scorer)

    init_score = aggregate_density(kind, S, history.select(C))
    # the first re-solve is always accepted (incumbent score starts at 0);
    # later ones must strictly improve
    best_C, best_S, best_score = C, S, None
    trace = []
    iterations = 0
    while iterations < max_iters:
        iterations += 1
        C = best_snapshots(best_S, history, k, kind.density)
        sol = _solve_on(history, C, kind, scorer)
        trace.append(sol.score)
        if best_score is None or sol.score > best_score:
            best_C, best_S, best_score = C, sol.nodes, sol.score
        else:
            break
    if best_score is None:
        best_score = init_score
    log.debug("ITR(%s) finished after %d iterations", init.value, iterations)
    meta["trace"] = trace
    meta["init_score"] = init_score
    name = {"random": "ITR-R", "contiguous": "ITR-C", "at-least-k": "ITR-K"}[init.value]
    return O2Solution(tuple(best_S), tuple(best_C), best_score, kind, name, iterations, meta)


def o2bff_incremental_density(
    history: GraphHistory,
    kind,
    k: int,
    scorer: Scorer | str | None = None,
    random_pair: bool = False,
    seed: int = 0,
) -> O2Solution:
    """Start from the pair of snapshots with the densest peeled set, then add
    the snapshot that keeps the re-peeled set densest, until k are chosen."""
    kind = AggregateKind.parse(kind)
    _check_k(history, k, lowest=2)
    scorer = default_scorer(kind) if scorer is None else Scorer.parse(scorer)
    if random_pair:
        rng = np.random.default_rng(seed)
        C = tuple(sorted(int(i) for i in rng.choice(history.tau, size=2, replace=False)))
    else:
        best = None
        for pair in itertools.combinations(range(history.tau), 2):
            score = _solve_on(history, pair, kind, scorer).score
            if best is None or score > best[0]:
                best = (score, pair)
        C = best[1]
    while len(C) < k:
        best = None
        for t in range(history.tau):
            if t in C:
                continue
            score = _solve_on(history, tuple(sorted(C + (t,))), kind, scorer).score
            if best is None or score > best[0]:
                best = (score, t)
        C = tuple(sorted(C + (best[1],)))
    sol = _solve_on(history, C, kind, scorer)
    return O2Solution(sol.nodes, C, sol.score, kind, "INC-D", k - 1, {"random_pair": random_pair})


def jaccard(a: Iterable[int], b: Iterable[int]) -> Fraction:
    a, b = set(a), set(b)
    union = a | b
    if not union:
        return Fraction(0)
    return Fraction(len(a & b), len(union))


def o2bff_incremental_overlap(
    history: GraphHistory,
    kind,
    k: int,
    scorer: Scorer | str | None = None,
) -> O2Solution:
    """Grow the snapshot set by Jaccard similarity of per-snapshot solutions."""
    kind = AggregateKind.parse(kind)
    _check_k(history, k, lowest=2)
    scorer = default_scorer(kind) if scorer is None else Scorer.parse(scorer)
    single = [set(_solve_on(history, (t,), kind, scorer).nodes) for t in range(history.tau)]
    best = None
    for i, j in itertools.combinations(range(history.tau), 2):
        sim = jaccard(single[i], single[j])
        if best is None or sim > best[0]:
            best = (sim, (i, j))
    C = best[1]
    while len(C) < k:
        S_C = _solve_on(history, C, kind, scorer).nodes
        best = None
        for t in range(history.tau):
            if t in C:
                continue
            sim = jaccard(single[t], S_C)
            if best is None or sim > best[0]:
                best = (sim, t)
        C = tuple(sorted(C + (best[1],)))
    sol = _solve_on(history, C, kind, scorer)
    return O2Solution(sol.nodes, C, sol.score, kind, "INC-O", k - 1)


SOLVERS = ("itr-r", "itr-c", "itr-k", "inc-d", "inc-o")


def solve_o2bff(history: GraphHistory, kind, k: int, solver: str, seed: int = 0,
                max_iters: int = 100, scorer=None) -> O2Solution:
    """Dispatch on the short solver names used by the CLI and experiment grids."""
    if solver == "itr-r":
        return o2bff_iterative(history, kind, k, InitKind.RANDOM, seed, max_iters, scorer)
    if solver == "itr-c":
        return o2bff_iterative(history, kind, k, InitKind.CONTIGUOUS, seed, max_iters, scorer)
    if solver == "itr-k":
        return o2bff_iterative(history, kind, k, InitKind.AT_LEAST_K, seed, max_iters, scorer)
    if solver == "inc-d":
        return o2bff_incremental_density(history, kind, k, scorer)
    if solver == "inc-o":
        return o2bff_incremental_overlap(history, kind, k, scorer)
    raise ValueError(f"unknown O2BFF solver {solver!r}; expected one of {SOLVERS}")
