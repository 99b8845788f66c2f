"""Command line: ``gpgame solve|gen|verify|play``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from typing import List, Optional, Sequence, TextIO

from . import families
from .graph import Graph, GraphError, VertexSet, format_graph, read_graph
from .solver import GameSolver, GameState, Player, SearchBudgetExceeded, gp_lower_number, gp_number
from .verify import SUITES, format_report, run_suites

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _ints(params: Sequence[str], count: int, family: str) -> List[int]:
    if len(params) != count:
        raise UsageError(f"{family} takes {count} integer parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"{family} parameters must be integers: {' '.join(params)}") from None


def build_family(args: argparse.Namespace) -> Graph:
    fam, params = args.family, args.params
    one = {"path", "cycle", "complete", "star", "cocktail", "hypercube", "empty"}
    two = {"kneser", "petersen", "grs", "hjk", "random-tree"}
    if fam in one:
        return families.GENERATORS[fam](*_ints(params, 1, fam))
    if fam in two:
        return families.GENERATORS[fam](*_ints(params, 2, fam))
    if fam == "random-graph":
        return families.random_connected_graph(*_ints(params, 3, fam))
    if fam == "multipartite":
        parts = _int_list(",".join(params))
        return families.gen_multipartite(parts)
    if fam == "caterpillar":
        if len(params) != 1:
            raise UsageError("caterpillar takes one parameter: the leaf counts, e.g. 2,0,3")
        subdiv = _int_list(args.subdiv) if args.subdiv else [0]
        counts = subdiv[0] if len(subdiv) == 1 else tuple(subdiv)
        return families.gen_caterpillar(families.CaterpillarSpec(tuple(_int_list(params[0])), counts))
    if fam == "family-h":
        if params:
            raise UsageError("family-h is configured with --blocks/--pendant/--paths")
        blocks = tuple(_int_list(args.blocks or ""))
        pendant = tuple(_int_list(args.pendant)) if args.pendant else None
        paths = tuple(_int_list(args.paths or ""))
        return families.gen_family_h(families.FamilyHSpec(blocks, pendant, paths))
    raise UsageError(f"unknown family {fam!r}")


FAMILY_NAMES = [
    "path", "cycle", "complete", "empty", "star", "cocktail", "hypercube", "multipartite",
    "kneser", "petersen", "grs", "hjk", "caterpillar", "family-h", "random-tree", "random-graph",
]


def _display(first: Player) -> str:
    return "gpg" if first is Player.BUILDER else "gpg'"


def _timestamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


# -- commands ---------------------------------------------------------------------


def cmd_solve(args: argparse.Namespace, out: TextIO) -> int:
    g = read_graph(args.graph)
    first = Player(args.first)
    solver = GameSolver(g, node_budget=args.budget)
    outcome = solver.solve(first, workers=args.workers)
    values = {"gpg" if first is Player.BUILDER else "gpg_prime": outcome.value}
    print(f"graph: {g.name or args.graph} (n={g.n}, m={g.m})", file=out)
    print(f"first player: {first.value}", file=out)
    print(f"{_display(first)} = {outcome.value}", file=out)
    print("principal variation: " + " ".join(str(v) for v in outcome.principal_variation), file=out)
    if args.all:
        other = first.other
        other_value = solver.value((), other)
        values["gpg" if other is Player.BUILDER else "gpg_prime"] = other_value
        values["gp"] = gp_number(g, solver.dist, node_budget=args.budget)
        values["gp_lower"] = gp_lower_number(g, solver.dist, node_budget=args.budget)
        print(f"{_display(other)} = {other_value}", file=out)
        print(f"gp = {values['gp']}", file=out)
        print(f"gp- = {values['gp_lower']}", file=out)
    stats = outcome.stats
    print(f"nodes: {stats.nodes}  memo hits: {stats.memo_hits}  closure cutoffs: {stats.closure_cutoffs}", file=out)
    if args.out:
        header = {"kind": "header", "version": 1, "command": _echo(args), "timestamp": _timestamp()}
        record = {
            "kind": "solve",
            "graph": g.name or str(args.graph),
            "n": g.n,
            "m": g.m,
            "first": first.value,
            "values": values,
            "principal_variation": list(outcome.principal_variation),
            "nodes": stats.nodes,
            "memo_hits": stats.memo_hits,
            "closure_cutoffs": stats.closure_cutoffs,
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(header) + "\n" + json.dumps(record) + "\n")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    g = build_family(args)
    text = format_graph(g, labels=args.labels)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    names = args.suite
    for name in names:
        if name != "all" and name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}, all")
    if "all" in names:
        names = ["all"]
    records = run_suites(names)
    failed = [r for r in records if not r.passed]
    by_suite: dict = {}
    for r in records:
        ok, bad = by_suite.get(r.suite, (0, 0))
        by_suite[r.suite] = (ok + r.passed, bad + (not r.passed))
    for suite, (ok, bad) in by_suite.items():
        status = "PASS" if not bad else "FAIL"
        print(f"{status}  {suite:<13} {ok} passed, {bad} failed", file=out)
    for r in failed:
        print(f"  mismatch in {r.suite}: {r.graph} {r.params}", file=out)
        for c in r.failures():
            print(f"    {c.name}: expected {c.expected!r}, observed {c.observed!r} ({c.verdict})", file=out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_report(_echo(args), records, _timestamp(), timings=args.timings))
    return EXIT_MISMATCH if failed else EXIT_OK


def play_session(
    g: Graph,
    human: Player,
    first: Player,
    stdin: TextIO,
    stdout: TextIO,
    solver: Optional[GameSolver] = None,
) -> Optional[int]:
    """Interactive game; returns the final set size, or ``None`` if the human resigns."""
    solver = solver or GameSolver(g)
    optimal = solver.value((), first)
    state = GameState(VertexSet(), first)
    while True:
        playable = solver.playable(state.chosen)
        print(f"chosen: {state.chosen.sorted()}  playable: {playable.sorted()}", file=stdout)
        if not playable:
            break
        mover = state.to_move
        if mover is human:
            while True:
                print(f"your move ({human.value}): ", end="", file=stdout, flush=True)
                line = stdin.readline()
                if not line:
                    print("\nend of input: you resign", file=stdout)
                    return None
                line = line.strip()
                try:
                    v = int(line)
                except ValueError:
                    print(f"not a vertex id: {line!r}", file=stdout)
                    continue
                if v not in playable:
                    print(f"vertex {v} is not playable", file=stdout)
                    continue
                break
        else:
            v = solver.best_move(state)
            print(f"{mover.value} plays {v}", file=stdout)
        state = state.play(v)
    size = len(state.chosen)
    print(f"game over: final set {state.chosen.sorted()} has {size} vertices; optimal play gives {optimal}", file=stdout)
    return size


def cmd_play(args: argparse.Namespace, out: TextIO) -> int:
    g = read_graph(args.graph)
    play_session(g, Player(args.human), Player(args.first), sys.stdin, out, GameSolver(g, node_budget=args.budget))
    return EXIT_OK


def _echo(args: argparse.Namespace) -> str:
    return " ".join(getattr(args, "argv", []) or [])


# -- parser -------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpgame", description="Builder-Blocker general position game solver")
    sub = parser.add_subparsers(dest="command", required=True)
    players = [p.value for p in Player]

    p = sub.add_parser("solve", help="solve the game on a graph file")
    p.add_argument("graph")
    p.add_argument("--first", choices=players, default="builder")
    p.add_argument("--all", action="store_true", help="also report the other game, gp and gp-")
    p.add_argument("--out", help="write a report line to this file")
    p.add_argument("--budget", type=int, default=None, help="node expansion cap")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a family member in graph text format")
    p.add_argument("family", choices=FAMILY_NAMES)
    p.add_argument("params", nargs="*")
    p.add_argument("--subdiv", help="caterpillar subdivisions: one count or one per edge")
    p.add_argument("--blocks", help="family-h block sizes, e.g. 3,2")
    p.add_argument("--pendant", help="family-h pendant path lengths per block")
    p.add_argument("--paths", help="family-h path lengths at the hub")
    p.add_argument("--labels", action="store_true", help="emit vertex labels as comment lines")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="+", help=f"one or more of: {', '.join(SUITES)}, all")
    p.add_argument("--out", help="write the JSON-lines report here")
    p.add_argument("--timings", action="store_true", help="include per-instance wall times in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("play", help="play against the solver in the terminal")
    p.add_argument("graph")
    p.add_argument("--human", choices=players, default="builder")
    p.add_argument("--first", choices=players, default="builder")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_play)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.argv = argv
    try:
        return args.func(args, out)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
