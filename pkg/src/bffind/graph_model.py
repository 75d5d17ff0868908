"""Graph histories: snapshots over a shared node universe, induced
subhistories, the average graph, and the edge-list text format."""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence


class ParseError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class EmptyHistoryError(ValueError):
    pass


class EmptySetError(ValueError):
    pass


@dataclass(frozen=True)
class Snapshot:
    """One undirected simple graph. ``adj[u]`` is the sorted tuple of
    neighbours of ``u``."""

    adj: tuple[tuple[int, ...], ...]
    m: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Snapshot":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError(f"edge ({u}, {v}) outside [0, {n})")
            if u == v:
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in nbrs)
        return cls(adj, sum(len(a) for a in adj) // 2)

    @property
    def n(self) -> int:
        return len(self.adj)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adj) for v in nb if u < v]


@dataclass(frozen=True)
class GraphHistory:
    """A sequence of snapshots sharing the node set ``range(n)``.

    ``labels[u]`` is the external name of node ``u``; ``origin[u]``, when set,
    is the id ``u`` had in the history this one was induced from.
    """

    n: int
    snapshots: tuple[Snapshot, ...]
    labels: tuple[str, ...] | None = None
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.snapshots) < 1:
            raise EmptyHistoryError("a graph history needs at least one snapshot")
        for s in self.snapshots:
            if s.n != self.n:
                raise ValueError("all snapshots must share the node universe")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must name every node")

    @classmethod
    def from_edge_lists(
        cls,
        n: int,
        edge_lists: Sequence[Iterable[tuple[int, int]]],
        labels: Sequence[str] | None = None,
    ) -> "GraphHistory":
        snaps = tuple(Snapshot.from_edges(n, e) for e in edge_lists)
        return cls(n, snaps, tuple(labels) if labels is not None else None)

    @property
    def tau(self) -> int:
        return len(self.snapshots)

    @property
    def total_edges(self) -> int:
        return sum(s.m for s in self.snapshots)

    def label(self, u: int) -> str:
        return self.labels[u] if self.labels is not None else str(u)

    def ids_for(self, labels: Iterable[str]) -> list[int]:
        """Map external labels back to node ids."""
        lookup = {self.label(u): u for u in range(self.n)}
        try:
            return [lookup[x] for x in labels]
        except KeyError as exc:
            raise KeyError(f"unknown node label {exc.args[0]!r}") from None

    def select(self, indices: Iterable[int]) -> "GraphHistory":
        """The history made of the snapshots at ``indices`` (same nodes)."""
        idx = list(indices)
        for i in idx:
            if not 0 <= i < self.tau:
                raise IndexError(f"snapshot index {i} outside [0, {self.tau})")
        return GraphHistory(self.n, tuple(self.snapshots[i] for i in idx), self.labels)


def _check_nodes(history: GraphHistory, nodes: Iterable[int]) -> list[int]:
    S = sorted(set(nodes))
    if not S:
        raise EmptySetError("node set is empty")
    if S[0] < 0 or S[-1] >= history.n:
        raise IndexError(f"node ids must lie in [0, {history.n})")
    return S


def induced_subhistory(history: GraphHistory, nodes: Iterable[int]) -> GraphHistory:
    """Restrict every snapshot to ``nodes``; ids are renumbered in increasing
    order and the old ids kept in ``origin``."""
    S = _check_nodes(history, nodes)
    new_id = {u: i for i, u in enumerate(S)}
    snaps = []
    for snap in history.snapshots:
        adj = tuple(tuple(new_id[v] for v in snap.adj[u] if v in new_id) for u in S)
        snaps.append(Snapshot(adj, sum(len(a) for a in adj) // 2))
    labels = tuple(history.label(u) for u in S) if history.labels is not None else tuple(str(u) for u in S)
    return GraphHistory(len(S), tuple(snaps), labels, tuple(S))


@dataclass(frozen=True)
class AverageGraph:
    """Edge weights are stored as counts; the weight of ``(u, v)`` is
    ``count / tau``. Pairs that never appear are not stored."""

    n: int
    tau: int
    adj: tuple[tuple[tuple[int, int], ...], ...]

    def weight(self, u: int, v: int) -> Fraction:
        for w, c in self.adj[u]:
            if w == v:
                return Fraction(c, self.tau)
        return Fraction(0)

    def scaled_degree(self, u: int) -> int:
        """Weighted degree times tau; always an integer."""
        return sum(c for _, c in self.adj[u])

    def degree(self, u: int) -> Fraction:
        return Fraction(self.scaled_degree(u), self.tau)


def build_average_graph(history: GraphHistory) -> AverageGraph:
    counts: list[dict[int, int]] = [dict() for _ in range(history.n)]
    for snap in history.snapshots:
        for u, nb in enumerate(snap.adj):
            cu = counts[u]
            for v in nb:
                cu[v] = cu.get(v, 0) + 1
    adj = tuple(tuple(sorted(c.items())) for c in counts)
    return AverageGraph(history.n, history.tau, adj)


# -- edge-list text format ---------------------------------------------------

_TAU_HINT = re.compile(r"#\s*tau\s*=\s*(\d+)\s*$")


def load_history(source: IO[str] | IO[bytes] | str) -> GraphHistory:
    """Parse ``t u v`` lines (``#`` starts a comment line).

    ``source`` is a text or binary stream, or the document itself as a str.
    Node ids are assigned in order of first appearance. A comment of the
    form ``# tau=N`` raises the snapshot count to at least N, so trailing
    empty snapshots survive a round trip.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    ids: dict[str, int] = {}
    edges: dict[int, list[tuple[int, int]]] = {}
    min_tau = 0
    for lineno, raw in enumerate(source, 1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            hint = _TAU_HINT.match(line)
            if hint:
                min_tau = max(min_tau, int(hint.group(1)))
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(lineno, f"expected 't u v', got {len(parts)} tokens")
        try:
            t = int(parts[0])
        except ValueError:
            raise ParseError(lineno, f"snapshot index {parts[0]!r} is not an integer") from None
        if t < 0:
            raise ParseError(lineno, f"negative snapshot index {t}")
        u = ids.setdefault(parts[1], len(ids))
        v = ids.setdefault(parts[2], len(ids))
        edges.setdefault(t, []).append((u, v))
    if not edges:
        raise EmptyHistoryError("input contains no edges")
    tau = max(max(edges) + 1, min_tau)
    labels = sorted(ids, key=ids.__getitem__)
    return GraphHistory.from_edge_lists(len(ids), [edges.get(t, []) for t in range(tau)], labels)


def load_history_file(path) -> GraphHistory:
    with open(path, "rb") as fh:
        return load_history(fh)


def dump_history(history: GraphHistory, out: IO[str] | None = None) -> str:
    """Write the history in the edge-list format, edges in canonical order.

    Nodes without any edge cannot be represented and are lost on reload.
    """
    lines = []
    for t, snap in enumerate(history.snapshots):
        for u, v in snap.edges():
            lines.append(f"{t} {history.label(u)} {history.label(v)}")
    if not history.snapshots[-1].m:
        lines.append(f"# tau={history.tau}")
    text = "\n".join(lines) + ("\n" if lines else "")
    if out is not None:
        out.write(text)
    return text
