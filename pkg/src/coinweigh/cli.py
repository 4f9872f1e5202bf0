"""Command-line front end.  Output is JSONL or TSV unless ``--pretty`` is given."""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence, TextIO

from . import adversary, counting, solver
from .model import Assignment, MiddleCoin
from .scale import PanPolicy, Session, dump_transcript
from .solver import Goal, Solver, Universe
from .strategies import REGISTRY, drive
from .strategies.base import Answer
from .verify import exhaustive_check, universe_for

UNIVERSES = ("all", "one-middle", "hunt-4-1-4")
SOLVE_VARIANTS = {
    "sort3-tiny": ("all", PanPolicy.TINY, Goal.SORT),
    "sort3-huge": ("all", PanPolicy.HUGE, Goal.SORT),
    "find-mid": ("one-middle", PanPolicy.HUGE, Goal.FIND_MIDDLE),
    "hunt": ("hunt-4-1-4", PanPolicy.HUGE, Goal.FIND_MIDDLE),
}


class UsageError(Exception):
    pass


def _params(args) -> dict:
    return {"k": args.k} if args.k is not None else {}


def _describe(answer: Answer) -> str:
    if isinstance(answer, MiddleCoin):
        return f"middle coin: {answer.coin}"
    return " < ".join("{" + ",".join(map(str, g)) + "}" for g in answer.groups)


def _pick_assignment(args, info, params) -> Assignment:
    c = info.classes(**params)
    if args.assignment is not None:
        if args.seed is not None:
            raise UsageError("--assignment and --seed are exclusive")
        try:
            a = Assignment.from_digits(args.assignment, c)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if a.n != args.n:
            raise UsageError(f"--assignment has {a.n} digits but --n is {args.n}")
        return a
    if args.seed is None:
        raise UsageError("give --assignment or --seed")
    u = universe_for(info, args.n, args.universe, **params)
    return random.Random(args.seed).choice(u.assignments)


def cmd_run(args, out: TextIO) -> int:
    info = REGISTRY[args.strategy]
    params = _params(args)
    a = _pick_assignment(args, info, params)
    instance = info.instances(a)[0]
    session = Session(a, info.policy)
    answer = drive(info.make(a.n, **params, **instance), session.evaluate)
    ok = answer == info.expected(a)
    if args.pretty:
        out.write(f"hidden {a.digits()}\n")
        for k, (w, o) in enumerate(session.transcript, start=1):
            out.write(f"{k:3d}. {list(w.left)} {o.value} {list(w.right)}\n")
        out.write(f"answer {_describe(answer)} ({'correct' if ok else 'WRONG'})\n")
    else:
        dump_transcript(session.transcript, answer, out)
    return 0 if ok else 1


def cmd_verify(args, out: TextIO) -> int:
    info = REGISTRY[args.strategy]
    params = _params(args)
    u = universe_for(info, args.n, args.universe, **params)
    report = exhaustive_check(info, u, **params)
    if args.pretty:
        out.write(f"{info.name} over {u.name} (n={u.n}): {report.runs} runs\n")
        out.write(f"  failures: {len(report.failures)}\n")
        out.write(f"  max weighings: {report.max_count} (bound {report.bound})\n")
        for count in sorted(report.histogram):
            out.write(f"  {count:3d} weighings: {report.histogram[count]} runs\n")
        for f in report.failures[:10]:
            out.write(f"  FAIL {f.assignment}: {f.reason}\n")
    else:
        out.write(report.tsv() + "\n")
    return 0 if report.ok and report.bound_met else 1


def cmd_adversary(args, out: TextIO) -> int:
    info = REGISTRY[args.strategy]
    if info.policy is not PanPolicy.TINY:
        raise UsageError(f"{info.name} does not use one-coin pans")
    params = _params(args)
    try:
        trace = adversary.play(info.name, args.n, **params)
    except adversary.StrategyUnsound as exc:
        sys.stderr.write(f"unsound: {exc}\n")
        return 1
    floor = max(-(-3 * args.n // 2) - 2, 0)
    if args.pretty:
        out.write(f"s = {trace.potentials[0]}/2 at start\n")
        for k, ((w, o), rule) in enumerate(zip(trace.transcript, trace.rules), start=1):
            out.write(
                f"{k:3d}. {w.left[0]} {o.value} {w.right[0]}  rule {rule}  s = {trace.potentials[k]}/2\n"
            )
        out.write(f"answer {_describe(trace.answer)} after {trace.count} weighings\n")
    else:
        trace.dump(out)
    if info.classes(**params) == 3 and trace.count < floor:
        sys.stderr.write(f"{trace.count} weighings is below the floor {floor}\n")
        return 1
    return 0


def _solve(variant: str, n: int | None, budget: int, emit: str | None, all_pans: bool, out: TextIO, pretty: bool) -> int:
    uname, policy, goal = SOLVE_VARIANTS[variant]
    if uname != "hunt-4-1-4" and n is None:
        raise UsageError("--n is required")
    u = Universe.named(uname, n)
    if variant == "hunt":
        # depth search straight at the budget; the equal-pan move list first
        depth, tried = None, []
        for equal in ((False,) if all_pans else (True, False)):
            s = Solver(u, policy, goal, equal_pans=equal)
            tried.append("equal" if equal else "all")
            if s.solvable(s.full, budget):
                depth = budget
                break
        label = "found" if depth is not None else "exceeded"
    else:
        s = Solver(u, policy, goal, equal_pans=not all_pans)
        depth = s.optimal_depth(budget)
        label = "optimal"
        tried = ["all" if all_pans else "equal"]
    replay_ok = True
    if depth is not None and emit:
        tree = s.extract_tree(depth)
        replay_ok = not s.check_tree(tree, depth)
        with open(emit, "w") as fh:
            json.dump(tree, fh, sort_keys=True)
            fh.write("\n")
    shown = "exceeded" if depth is None else str(depth)
    if pretty:
        out.write(f"{variant} over {u.name} (n={u.n}, {len(u)} assignments)\n")
        out.write(f"  depth: {shown} ({label}, budget {budget}, moves {'+'.join(tried)})\n")
        out.write(f"  states expanded: {s.nodes}\n")
    else:
        fields = [
            ("variant", variant),
            ("universe", u.name),
            ("n", u.n),
            ("depth", shown),
            ("kind", label),
            ("budget", budget),
            ("moves", "+".join(tried)),
        ]
        if emit and depth is not None:
            fields.append(("replay", "ok" if replay_ok else "fail"))
        out.write("\t".join(f"{k}={v}" for k, v in fields) + "\n")
    return 0 if replay_ok else 1


def cmd_solve(args, out: TextIO) -> int:
    budget = args.budget if args.budget is not None else (6 if args.variant == "hunt" else solver.MAX_BUDGET)
    if not 0 <= budget <= solver.MAX_BUDGET:
        raise UsageError(f"--budget must lie in 0..{solver.MAX_BUDGET}")
    return _solve(args.variant, args.n, budget, args.emit_tree, args.all_pans, out, args.pretty)


def cmd_count(args, out: TextIO) -> int:
    if args.max < 1:
        raise UsageError("--max must be at least 1")
    table = counting.count_table(args.table, args.max)
    if args.pretty:
        for row in table.rows:
            brute = "-" if row[2] is None else row[2]
            out.write(f"n={row[0]:<3d} closed form {row[1]:<12d} brute force {brute}\n")
    else:
        for line in table.tsv_lines():
            out.write(line + "\n")
    return 0 if table.all_match else 1


def cmd_hunt(args, out: TextIO) -> int:
    if args.weighings == 6:
        return _solve("hunt", None, 6, args.emit_tree, False, out, args.pretty)
    u = Universe.hunt_4_1_4()
    report = exhaustive_check("find-mid", u)
    correct = report.runs - len(report.failures)
    ok = report.ok and report.max_count <= 7
    if args.pretty:
        out.write(f"{correct}/{report.runs} correct, at most {report.max_count} weighings\n")
    else:
        out.write(f"correct={correct}/{report.runs}\tmax={report.max_count}\tlimit=7\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coinweigh", description="Balance-scale sorting and search.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, strategy_required=True):
        p.add_argument("--strategy", choices=sorted(REGISTRY), required=strategy_required)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, default=None, help="class count for sortk-tiny")
        p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("run", help="run one strategy on one hidden assignment")
    common(p)
    p.add_argument("--assignment", help="digit string, coin 0 first")
    p.add_argument("--seed", type=int)
    p.add_argument("--universe", choices=UNIVERSES)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run a strategy on every assignment of a universe")
    common(p)
    p.add_argument("--universe", choices=UNIVERSES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("adversary", help="play a one-coin-pan strategy against the adversary")
    common(p, strategy_required=False)
    p.set_defaults(func=cmd_adversary, strategy="sort3-tiny")

    p = sub.add_parser("solve", help="exact minimax depth by search")
    p.add_argument("--variant", choices=sorted(SOLVE_VARIANTS), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--emit-tree", metavar="FILE")
    p.add_argument("--all-pans", action="store_true", help="also allow pans of unequal size")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("count", help="closed forms against brute force")
    p.add_argument("--table", choices=("dist", "balance"), required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("hunt", help="nine coins: four light, four heavy, one genuine")
    p.add_argument("--weighings", type=int, choices=(7, 6), default=7)
    p.add_argument("--emit-tree", metavar="FILE")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_hunt)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = out or sys.stdout
    if getattr(args, "n", None) is not None and args.n < 1:
        sys.stderr.write("coinweigh: --n must be positive\n")
        return 2
    if getattr(args, "k", None) is not None and getattr(args, "strategy", None) != "sortk-tiny":
        sys.stderr.write("coinweigh: --k applies to sortk-tiny only\n")
        return 2
    try:
        return args.func(args, out)
    except (UsageError, ValueError, KeyError) as exc:
        sys.stderr.write(f"coinweigh: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
