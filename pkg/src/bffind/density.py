"""Per-snapshot densities and their temporal aggregates.

All values are exact :class:`fractions.Fraction` objects.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable

from .graph_model import AverageGraph, EmptySetError, GraphHistory, Snapshot


class DensityKind(enum.Enum):
    AVG_DEGREE = "a"
    MIN_DEGREE = "m"


class AggregateKind(enum.Enum):
    """Temporal aggregator (first letter) composed with a snapshot density
    (second letter): ``MA`` is the minimum over time of the average degree."""

    MM = "mm"
    MA = "ma"
    AM = "am"
    AA = "aa"

    @property
    def aggregator_is_min(self) -> bool:
        return self.value[0] == "m"

    @property
    def density(self) -> DensityKind:
        return DensityKind.MIN_DEGREE if self.value[1] == "m" else DensityKind.AVG_DEGREE

    @classmethod
    def parse(cls, text: "str | AggregateKind") -> "AggregateKind":
        if isinstance(text, cls):
            return text
        return cls(str(text).lower())


def _node_set(S: Iterable[int]) -> frozenset[int]:
    S = frozenset(S)
    if not S:
        raise EmptySetError("density of the empty set is undefined")
    return S


def _induced_degrees(S: frozenset[int], snap: Snapshot) -> list[int]:
    return [sum(1 for v in snap.adj[u] if v in S) for u in S]


def density(kind: DensityKind, S: Iterable[int], snapshot: Snapshot) -> Fraction:
    S = _node_set(S)
    degs = _induced_degrees(S, snapshot)
    if kind is DensityKind.MIN_DEGREE:
        return Fraction(min(degs))
    return Fraction(sum(degs), len(S))


def density_sequence(kind: DensityKind, S: Iterable[int], history: GraphHistory) -> list[Fraction]:
    S = _node_set(S)
    return [density(kind, S, snap) for snap in history.snapshots]


def aggregate(values: list[Fraction], use_min: bool) -> Fraction:
    if use_min:
        return min(values)
    return sum(values, Fraction(0)) / len(values)


def aggregate_density(kind: AggregateKind, S: Iterable[int], history: GraphHistory) -> Fraction:
    kind = AggregateKind.parse(kind)
    return aggregate(density_sequence(kind.density, S, history), kind.aggregator_is_min)


def density_on_average_graph(S: Iterable[int], avg: AverageGraph) -> Fraction:
    """Average weighted degree of the average graph induced on ``S``."""
    S = _node_set(S)
    scaled = sum(c for u in S for v, c in avg.adj[u] if v in S)
    return Fraction(scaled, avg.tau * len(S))
