"""Synthetic graph histories.

Snapshots come from an undirected forest-fire process, one independent
random stream per snapshot. Dense subgraphs are planted on top with their own
streams, so a history without plants is bit-identical to the bare
forest-fire history drawn from the same seed.

Random numbers come from numpy's PCG64 bit generator, seeded through
``SeedSequence``; the generator name is recorded in :data:`RNG_NAME`.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .graph_model import GraphHistory

RNG_NAME = "numpy.PCG64/SeedSequence"


@dataclass(frozen=True)
class PlantSpec:
    """A planted dense subgraph.

    ``nodes`` fixes the member set; otherwise ``size`` members are drawn
    uniformly. ``snapshots=None`` plants in every snapshot.
    """

    size: int
    edge_prob: float
    snapshots: tuple[int, ...] | None = None
    nodes: tuple[int, ...] | None = None


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    tau: int
    p_forward: float = 0.35
    p_backward: float = 0.35
    planted: tuple[PlantSpec, ...] = ()
    seed: int = 0

    def validate(self) -> None:
        if self.n < 1 or self.tau < 1:
            raise ValueError("n and tau must be at least 1")
        for p in (self.p_forward, self.p_backward):
            if not 0.0 <= p < 1.0:
                raise ValueError("burning probabilities must lie in [0, 1)")
        for plant in self.planted:
            if not 0.0 <= plant.edge_prob <= 1.0:
                raise ValueError("plant edge probability must lie in [0, 1]")
            size = len(plant.nodes) if plant.nodes is not None else plant.size
            if not 1 <= size <= self.n:
                raise ValueError(f"plant size {size} outside [1, {self.n}]")
            if plant.nodes is not None and any(not 0 <= u < self.n for u in plant.nodes):
                raise ValueError("plant nodes outside the node universe")
            if plant.snapshots is not None and any(not 0 <= t < self.tau for t in plant.snapshots):
                raise ValueError("plant snapshot outside [0, tau)")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "InstanceSpec":
        d = dict(d)
        plants = []
        for p in d.pop("planted", ()):
            p = dict(p)
            for key in ("snapshots", "nodes"):
                if p.get(key) is not None:
                    p[key] = tuple(p[key])
            plants.append(PlantSpec(**p))
        return cls(planted=tuple(plants), **d)


def _geometric_count(rng: np.random.Generator, p: float) -> int:
    """Number of links to burn: geometric with mean p / (1 - p)."""
    if p <= 0.0:
        return 0
    return int(rng.geometric(1.0 - p)) - 1


def forest_fire_edges(n: int, p_forward: float, p_backward: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Undirected forest fire.

    Node ``v`` joins by picking a uniform ambassador among ``0..v-1`` and
    burning outward: from each burning node it follows a geometric number of
    the links that node created (forward) and of the links created toward it
    (backward), linking to everything burned.
    """
    out_links: list[list[int]] = [[] for _ in range(n)]
    in_links: list[list[int]] = [[] for _ in range(n)]
    edges: list[tuple[int, int]] = []
    for v in range(1, n):
        amb = int(rng.integers(v))
        burned = {amb}
        frontier = [amb]
        while frontier:
            nxt = []
            for w in frontier:
                for pool, p in ((out_links[w], p_forward), (in_links[w], p_backward)):
                    want = _geometric_count(rng, p)
                    if not want:
                        continue
                    fresh = [x for x in pool if x not in burned]
                    if not fresh:
                        continue
                    if want < len(fresh):
                        pick = rng.choice(len(fresh), size=want, replace=False)
                        fresh = [fresh[i] for i in sorted(pick)]
                    for x in fresh:
                        burned.add(x)
                        nxt.append(x)
            frontier = nxt
        for w in sorted(burned):
            out_links[v].append(w)
            in_links[w].append(v)
            edges.append((w, v))
    return edges


def plant_edges(members: Sequence[int], edge_prob: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Each pair of ``members`` independently with probability ``edge_prob``."""
    members = np.asarray(sorted(members), dtype=np.int64)
    k = len(members)
    iu, ju = np.triu_indices(k, 1)
    keep = rng.random(len(iu)) < edge_prob
    return list(zip(members[iu[keep]].tolist(), members[ju[keep]].tolist()))


def generate_history(spec: InstanceSpec) -> tuple[GraphHistory, list[tuple[int, ...]]]:
    """Forest-fire snapshots with planted subgraphs; returns the history and
    the planted member sets."""
    spec.validate()
    root = np.random.SeedSequence(spec.seed)
    fire_seq, plant_seq = root.spawn(2)
    fire_streams = fire_seq.spawn(spec.tau)
    edge_lists = [
        forest_fire_edges(spec.n, spec.p_forward, spec.p_backward, np.random.Generator(np.random.PCG64(s)))
        for s in fire_streams
    ]
    truth = []
    for plant, seq in zip(spec.planted, plant_seq.spawn(len(spec.planted))):
        rng = np.random.Generator(np.random.PCG64(seq))
        if plant.nodes is not None:
            members = tuple(sorted(plant.nodes))
        else:
            members = tuple(sorted(int(u) for u in rng.choice(spec.n, size=plant.size, replace=False)))
        snaps = range(spec.tau) if plant.snapshots is None else sorted(plant.snapshots)
        for t in snaps:
            edge_lists[t].extend(plant_edges(members, plant.edge_prob, rng))
        truth.append(members)
    return GraphHistory.from_edge_lists(spec.n, edge_lists), truth


def write_ground_truth(spec: InstanceSpec, truth: Sequence[Sequence[int]], history: GraphHistory, out) -> None:
    """Sidecar format: one line per plant, ``<snapshots> <TAB> <labels>`` with
    comma-separated snapshot indices and space-separated node labels."""
    for plant, members in zip(spec.planted, truth):
        snaps = range(spec.tau) if plant.snapshots is None else sorted(plant.snapshots)
        out.write(",".join(map(str, snaps)) + "\t" + " ".join(history.label(u) for u in members) + "\n")


def read_ground_truth(text: str) -> list[tuple[tuple[int, ...], tuple[str, ...]]]:
    rows = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        snaps, _, labels = line.partition("\t")
        rows.append((tuple(int(t) for t in snaps.split(",") if t), tuple(labels.split())))
    return rows


# -- counterexample families -------------------------------------------------

def _clique(nodes: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]


def prop4_instance(n: int, tau: int) -> tuple[GraphHistory, tuple[int, ...]]:
    """Clique on nodes ``0..n-2`` plus pendant ``n-1`` hanging off ``n-2`` in
    the first tau-1 snapshots; the last snapshot holds only the pendant edge.
    Min-degree peeling scores 1 on average-of-min-degree; the clique scores
    (n-2)(tau-1)/tau."""
    if n < 3 or tau < 2:
        raise ValueError("need n >= 3 and tau >= 2")
    clique = list(range(n - 1))
    u, v = n - 2, n - 1
    full = _clique(clique) + [(u, v)]
    return GraphHistory.from_edge_lists(n, [full] * (tau - 1) + [[(u, v)]]), tuple(clique)


def prop5_instance(b: int, tau: int) -> tuple[GraphHistory, tuple[int, ...]]:
    """Complete b x b bipartite graph (nodes ``0..2b-1``) with hubs
    ``u = 2b``, ``v = 2b+1``, ``s = 2b+2``. ``u`` covers the bipartite nodes in
    the first half of the snapshots and ``v`` in the second half; ``s`` covers
    everything except in the last snapshot, where it touches only u and v."""
    if b < 1 or tau < 2 or tau % 2:
        raise ValueError("need b >= 1 and an even tau >= 2")
    left, right = range(b), range(b, 2 * b)
    bip = list(range(2 * b))
    u, v, s = 2 * b, 2 * b + 1, 2 * b + 2
    n = 2 * b + 3
    base = [(x, y) for x in left for y in right] + [(u, v)]
    lists = []
    for t in range(tau):
        e = list(base)
        e += [(u, x) for x in bip] if t < tau // 2 else [(v, x) for x in bip]
        if t < tau - 1:
            e += [(s, x) for x in range(n) if x != s]
        else:
            e += [(s, u), (s, v)]
        lists.append(e)
    return GraphHistory.from_edge_lists(n, lists), tuple(bip)


def prop6_instance(m: int) -> tuple[GraphHistory, tuple[int, ...]]:
    """tau = m snapshots over A = ``0..m-1`` and B = ``m..m+m^2-1``. B is a
    cycle; in snapshot t, A minus node t is a clique and node t is cut off."""
    if m < 3:
        raise ValueError("need m >= 3")
    A = list(range(m))
    B = list(range(m, m + m * m))
    cycle = [(B[i], B[(i + 1) % len(B)]) for i in range(len(B))]
    lists = [_clique([a for a in A if a != t]) + cycle for t in range(m)]
    return GraphHistory.from_edge_lists(m + m * m, lists), tuple(A)


def prop7_instance(m: int) -> tuple[GraphHistory, tuple[int, ...]]:
    """tau = m snapshots: cliques on A = ``0..m-1`` and B = ``m..m+m^2-1``,
    except that B has no edges in the last snapshot."""
    if m < 2:
        raise ValueError("need m >= 2")
    A = list(range(m))
    B = list(range(m, m + m * m))
    both = _clique(A) + _clique(B)
    lists = [both] * (m - 1) + [_clique(A)]
    return GraphHistory.from_edge_lists(m + m * m, lists), tuple(A)


def adversarial_instance(family: str, **params) -> tuple[GraphHistory, tuple[int, ...]]:
    """Dispatch by family name: ``prop4(n, tau)``, ``prop5(b, tau)``,
    ``prop6(m)``, ``prop7(m)``."""
    builders = {"prop4": prop4_instance, "prop5": prop5_instance, "prop6": prop6_instance, "prop7": prop7_instance}
    try:
        build = builders[family.lower()]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return build(**params)
