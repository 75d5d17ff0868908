"""Recovery scoring and experiment grids.

A grid is a dict (usually loaded from JSON)::

    {
      "name": "sweep",
      "instances": [{"id": "p0.1-s0", "x": 0.1, "seed": 0,
                      "spec": {...InstanceSpec fields...}, "truth": 0}, ...],
      "solvers": [{"name": "mm", "problem": "bff", "density": "mm",
                   "scorer": "min"}, ...]
    }

``truth`` picks which planted set the F-measure is scored against. A BFF
solver with ``"scorers": [...]`` runs each peel and keeps the best score. O2BFF
solvers carry ``"problem": "o2bff"``, a ``"solver"`` short name and either
``"k"`` or ``"k_frac"`` (fraction of tau).
"""

from __future__ import annotations

import json
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .density import AggregateKind
from .o2bff import solve_o2bff
from .oracle import dcs_baseline
from .peeling import Solution, find_bff
from .synthetic import InstanceSpec, PlantSpec, generate_history

COLUMNS = ("instance", "solver", "kind", "k", "score", "size", "f_measure", "wall_time")


def f_measure(found: Iterable[int], truth: Iterable[int]) -> float:
    found, truth = set(found), set(truth)
    if not truth:
        raise ValueError("ground-truth set is empty")
    hit = len(found & truth)
    if hit == 0:
        return 0.0
    p = hit / len(found)
    r = hit / len(truth)
    return 2 * p * r / (p + r)


@dataclass
class Row:
    instance: str
    solver: str
    kind: str
    k: int | None
    score: Fraction | None
    size: int
    f_measure: float
    wall_time: float
    x: float | None = None
    seed: int | None = None
    nodes: tuple[int, ...] = ()
    snapshots: tuple[int, ...] = ()
    gen_time: float = 0.0
    error: str = ""
    f_all: tuple[float, ...] = ()  # F against every planted set

    def cells(self) -> list[str]:
        return [
            self.instance,
            self.solver,
            self.kind,
            "" if self.k is None else str(self.k),
            "error:" + self.error if self.error else str(self.score),
            str(self.size),
            f"{self.f_measure:.6f}",
            f"{self.wall_time:.6f}",
        ]


@dataclass
class ExperimentReport:
    name: str
    rows: list[Row] = field(default_factory=list)

    def to_tsv(self) -> str:
        lines = ["\t".join(COLUMNS)]
        lines += ["\t".join(r.cells()) for r in self.rows]
        return "\n".join(lines) + "\n"

    def series(self, truth: int | None = None) -> dict[str, list[tuple[float, float]]]:
        """Median F per solver and x value, in order of first appearance.
        ``truth`` scores against that planted set instead of the row's own."""
        groups: dict[str, dict[float, list[float]]] = {}
        for r in self.rows:
            if r.x is None or r.error:
                continue
            f = r.f_measure if truth is None else r.f_all[truth]
            groups.setdefault(r.solver, {}).setdefault(r.x, []).append(f)
        return {s: [(x, statistics.median(v)) for x, v in pts.items()] for s, pts in groups.items()}

    def medians(self, solver: str, truth: int | None = None) -> dict[float, float]:
        return dict(self.series(truth).get(solver, []))

    def write(self, out_dir) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = [out / f"{self.name}.tsv"]
        written[0].write_text(self.to_tsv())
        for solver, pts in self.series().items():
            path = out / f"{self.name}.{solver}.series"
            path.write_text("".join(f"{x}\t{y:.6f}\n" for x, y in pts))
            written.append(path)
        return written


def best_of(history, kind, scorers) -> Solution:
    """The highest-scoring of several peels; ties keep the earlier scorer."""
    best = None
    for scorer in scorers:
        sol = find_bff(history, kind, scorer)
        if best is None or sol.score > best.score:
            best = sol
    return best


def run_solver(history, conf: dict, seed: int = 0):
    """Run one solver description; returns ``(nodes, snapshots, score, k)``."""
    problem = conf.get("problem", "bff")
    kind = AggregateKind.parse(conf.get("density", "mm"))
    if problem == "bff":
        sol = best_of(history, kind, conf["scorers"]) if "scorers" in conf else find_bff(history, kind, conf.get("scorer"))
        return sol.nodes, (), sol.score, None
    if problem == "dcs":
        sol = dcs_baseline(history)
        return sol.nodes, (), sol.score, None
    if problem == "o2bff":
        k = conf.get("k")
        if k is None:
            k = max(1, round(conf["k_frac"] * history.tau))
        sol = solve_o2bff(history, kind, k, conf["solver"], seed=conf.get("seed", seed),
                          max_iters=conf.get("max_iters", 100), scorer=conf.get("scorer"))
        return sol.nodes, sol.snapshots, sol.score, k
    raise ValueError(f"unknown problem {problem!r}")


def _run_instance(inst: dict, solvers: list[dict]) -> list[Row]:
    spec = InstanceSpec.from_dict(inst["spec"])
    t0 = time.perf_counter()
    history, truth = generate_history(spec)
    gen_time = time.perf_counter() - t0
    target = truth[inst.get("truth", 0)] if truth else ()
    rows = []
    for conf in solvers:
        if conf.get("problem") == "o2bff" and conf.get("k") is None and "k" in inst:
            conf = dict(conf, k=inst["k"])
        name = conf.get("name") or conf.get("solver") or conf.get("scorer", "solver")
        kind = str(conf.get("density", "ma" if conf.get("problem") == "dcs" else "mm"))
        t0 = time.perf_counter()
        try:
            nodes, snaps, score, k = run_solver(history, conf, inst.get("seed", 0))
            err = ""
        except Exception as exc:  # recorded per row, the grid keeps going
            nodes, snaps, score, k, err = (), (), None, conf.get("k"), f"{type(exc).__name__}: {exc}"
        wall = time.perf_counter() - t0
        f_all = tuple(f_measure(nodes, X) if not err else 0.0 for X in truth)
        f = f_measure(nodes, target) if target and not err else 0.0
        rows.append(Row(inst["id"], name, kind, k, score, len(nodes), f, wall,
                        inst.get("x"), inst.get("seed"), tuple(nodes), tuple(snaps), gen_time, err, f_all))
    return rows


def run_experiment(grid: dict, workers: int | None = None) -> ExperimentReport:
    """Run every solver on every instance. Rows come out in grid order
    whatever the worker count; ``BFFIND_THREADS`` sets the default."""
    if workers is None:
        workers = int(os.environ.get("BFFIND_THREADS", "1"))
    instances = grid["instances"]
    solvers = grid["solvers"]
    report = ExperimentReport(grid.get("name", "experiment"))
    if workers > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rows in pool.map(_run_instance, instances, [solvers] * len(instances)):
                report.rows.extend(rows)
    else:
        for inst in instances:
            report.rows.extend(_run_instance(inst, solvers))
    return report


def load_grid(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


# -- grids for the synthetic recovery experiments ------------------------------

def _spec_dict(n, tau, plants, seed) -> dict:
    return {"n": n, "tau": tau, "seed": seed,
            "planted": [{"size": p.size, "edge_prob": p.edge_prob,
                         "snapshots": None if p.snapshots is None else list(p.snapshots)} for p in plants]}


# MA and AM have no guaranteed peel, so they keep the better of the two
# linear-time ones
BFF_SOLVERS = [
    {"name": "mm", "problem": "bff", "density": "mm", "scorer": "min"},
    {"name": "ma", "problem": "bff", "density": "ma", "scorers": ["min", "avg"]},
    {"name": "am", "problem": "bff", "density": "am", "scorers": ["min", "avg"]},
    {"name": "aa", "problem": "bff", "density": "aa", "scorer": "avg"},
]


def single_plant_grid(n=1000, tau=10, plant=50, probs=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
                      seeds=range(5), solvers=BFF_SOLVERS) -> dict:
    """One planted set in every snapshot, edge probability swept."""
    instances = []
    for p in probs:
        for s in seeds:
            instances.append({"id": f"p{p}-s{s}", "x": p, "seed": s, "truth": 0,
                              "spec": _spec_dict(n, tau, [PlantSpec(plant, p)], s)})
    return {"name": "single_plant", "instances": instances, "solvers": list(solvers)}


def two_plant_grid(n=1000, tau=10, plant=50, p_a=0.5, p_b=0.9, fracs=(0.2, 0.4, 0.6, 0.8),
                   seeds=range(5), solvers=BFF_SOLVERS, truth=1) -> dict:
    """Plant A in every snapshot and B in the first ``frac * tau`` snapshots.
    ``truth`` selects A (0) or B (1) for scoring."""
    instances = []
    for frac in fracs:
        lb = round(frac * tau)
        for s in seeds:
            plants = [PlantSpec(plant, p_a), PlantSpec(plant, p_b, tuple(range(lb)))]
            instances.append({"id": f"l{frac}-s{s}", "x": frac, "seed": s, "truth": truth,
                              "spec": _spec_dict(n, tau, plants, s)})
    return {"name": "two_plant", "instances": instances, "solvers": list(solvers)}


O2_SOLVERS = [
    {"name": name, "problem": "o2bff", "density": "mm", "solver": name}
    for name in ("itr-c", "itr-k", "itr-r", "inc-d", "inc-o")
]


def o2_recovery_grid(n=1000, tau=10, plant=50, fracs=(0.2, 0.4, 0.6, 0.8), seeds=range(5),
                     density="mm", solvers=O2_SOLVERS) -> dict:
    """Plant A (p=0.5) everywhere and B (p=0.9) in ``frac * tau`` snapshots;
    run each O2BFF solver with k equal to B's snapshot count and score
    against B."""
    instances = []
    grid_solvers = []
    for frac in fracs:
        kb = round(frac * tau)
        for s in seeds:
            plants = [PlantSpec(plant, 0.5), PlantSpec(plant, 0.9, tuple(range(kb)))]
            instances.append({"id": f"k{frac}-s{s}", "x": frac, "seed": s, "truth": 1, "k": kb,
                              "spec": _spec_dict(n, tau, plants, s)})
    for c in solvers:
        grid_solvers.append(dict(c, density=density))
    return {"name": f"o2_recovery_{density}", "instances": instances, "solvers": grid_solvers}
