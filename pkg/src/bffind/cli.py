"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import evaluation
from .density import AggregateKind, aggregate_density
from .graph_model import GraphHistory, ParseError, dump_history, load_history_file
from .o2bff import SOLVERS, solve_o2bff
from .oracle import BudgetError, brute_force_bff, brute_force_o2bff, dcs_baseline
from .peeling import Scorer, default_scorer, find_bff, find_bff_query, lift, restrict_to_component
from .synthetic import InstanceSpec, generate_history, write_ground_truth

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_BUDGET = 0, 1, 2, 3

# pairings with a proven guarantee: exact for mm/min, 1/2-approximation for aa/avg
GUARANTEED = {(AggregateKind.MM, Scorer.MIN_DEGREE), (AggregateKind.AA, Scorer.AVG_DEGREE)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bffind", description="Dense subgraphs that persist across graph snapshots.")
    p.add_argument("--debug", action="store_true", help="print internal node ids alongside labels")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def solving(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", required=True, help="edge list with 't u v' lines")
        sp.add_argument("--density", required=True, choices=[k.value for k in AggregateKind])
        sp.add_argument("--format", choices=("text", "tabular"), default="text")
        sp.add_argument("--out", help="write the solution here instead of stdout")
        return sp

    sp = solving("bff", "peel for a dense node set")
    sp.add_argument("--scorer", choices=[s.value for s in Scorer])

    sp = solving("o2bff", "choose k snapshots and a node set")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--solver", choices=SOLVERS, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-iters", type=int, default=100)
    sp.add_argument("--scorer", choices=[s.value for s in Scorer])

    sp = solving("qr-bff", "dense node set containing the query nodes")
    sp.add_argument("--query", nargs="+", required=True, metavar="LABEL")
    sp.add_argument("--scorer", choices=("min", "avg"))
    sp.add_argument("--restrict-component", action="store_true",
                    help="solve only on the union-graph component of the query")

    sp = sub.add_parser("dcs", help="DCS baseline (min over time of average degree)")
    sp.add_argument("--input", required=True)
    sp.add_argument("--format", choices=("text", "tabular"), default="text")
    sp.add_argument("--out")

    sp = solving("oracle", "exhaustive optimum for small inputs")
    sp.add_argument("--k", type=int, help="solve the k-snapshot variant")

    sp = sub.add_parser("generate", help="synthetic history from a JSON instance spec")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--out", required=True, help="output directory")

    sp = sub.add_parser("evaluate", help="run an experiment grid")
    sp.add_argument("--grid", required=True)
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--workers", type=int, help="parallel processes (default from BFFIND_THREADS)")
    return p


def _format(history: GraphHistory, kind: AggregateKind, score: Fraction, nodes, snapshots, solver,
            fmt: str, debug: bool) -> str:
    labels = sorted(history.label(u) for u in nodes)
    fields = [
        ("kind", kind.value),
        ("score", str(score)),
        ("score_decimal", f"{float(score):.6f}"),
        ("size", str(len(labels))),
        ("nodes", " ".join(labels)),
        ("snapshots", " ".join(map(str, snapshots)) if snapshots else "all"),
        ("solver", solver),
    ]
    if debug:
        fields.append(("ids", " ".join(map(str, sorted(nodes)))))
    if fmt == "tabular":
        return "\t".join(k for k, _ in fields) + "\n" + "\t".join(v for _, v in fields) + "\n"
    return "".join(f"{k}: {v}\n" for k, v in fields)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _self_check(history, kind, nodes, snapshots, score) -> None:
    h = history.select(snapshots) if snapshots else history
    again = aggregate_density(kind, nodes, h)
    if again != score:
        raise RuntimeError(f"self-check failed: recomputed {again}, reported {score}")


def _warn_pairing(kind: AggregateKind, scorer: Scorer) -> None:
    if (kind, scorer) not in GUARANTEED:
        print(f"warning: no approximation guarantee for density {kind.value} with scorer {scorer.value}", file=sys.stderr)


def _run(args) -> int:
    cmd = args.command
    if cmd == "generate":
        spec = InstanceSpec.from_dict(json.loads(Path(args.spec).read_text()))
        history, truth = generate_history(spec)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "history.txt", "w") as fh:
            fh.write(f"# tau={spec.tau}\n")
            dump_history(history, fh)
        with open(out / "truth.tsv", "w") as fh:
            write_ground_truth(spec, truth, history, fh)
        (out / "spec.json").write_text(spec.to_json() + "\n")
        return EXIT_OK
    if cmd == "evaluate":
        report = evaluation.run_experiment(evaluation.load_grid(args.grid), args.workers)
        for path in report.write(args.out):
            print(path)
        return EXIT_OK

    history = load_history_file(args.input)
    if cmd == "dcs":
        sol = dcs_baseline(history)
        kind, snaps = sol.kind, ()
    elif cmd == "bff":
        kind = AggregateKind.parse(args.density)
        scorer = default_scorer(kind) if args.scorer is None else Scorer.parse(args.scorer)
        _warn_pairing(kind, scorer)
        sol, snaps = find_bff(history, kind, scorer), ()
    elif cmd == "qr-bff":
        kind = AggregateKind.parse(args.density)
        scorer = default_scorer(kind) if args.scorer is None else Scorer.parse(args.scorer)
        if scorer is Scorer.GREEDY:
            scorer = Scorer.AVG_DEGREE
        _warn_pairing(kind, scorer)
        try:
            query = history.ids_for(args.query)
        except KeyError as exc:
            raise ValueError(exc.args[0]) from None
        if args.restrict_component:
            sub = restrict_to_component(history, query)
            sub_q = [sub.origin.index(u) for u in query]
            sol = lift(find_bff_query(sub, kind, scorer, sub_q), sub)
        else:
            sol = find_bff_query(history, kind, scorer, query)
        snaps = ()
    elif cmd == "o2bff":
        kind = AggregateKind.parse(args.density)
        sol = solve_o2bff(history, kind, args.k, args.solver, args.seed, args.max_iters, args.scorer)
        snaps = sol.snapshots
    elif cmd == "oracle":
        kind = AggregateKind.parse(args.density)
        if args.k is None:
            sol, snaps = brute_force_bff(history, kind), ()
        else:
            sol = brute_force_o2bff(history, kind, args.k)
            snaps = sol.snapshots
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(cmd)
    _self_check(history, kind, sol.nodes, snaps, sol.score)
    _emit(_format(history, kind, sol.score, sol.nodes, snaps, sol.solver, args.format, args.debug), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(message)s", stream=sys.stderr)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return _run(args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ValueError, IndexError, KeyError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
