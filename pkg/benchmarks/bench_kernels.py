"""Compare the compiled and pure-Python kernel backends on real solver workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from coinweigh import _pykernels
from coinweigh.scale import PanPolicy
from coinweigh.solver import Goal, Solver, Universe

try:
    from coinweigh import _ckernels
except ImportError:
    _ckernels = None

CASES = [
    ("sort3-tiny n=5", lambda: Universe.all(5), PanPolicy.TINY, Goal.SORT, None),
    ("sort3-tiny n=6", lambda: Universe.all(6), PanPolicy.TINY, Goal.SORT, None),
    ("hunt depth 6", Universe.hunt_4_1_4, PanPolicy.HUGE, Goal.FIND_MIDDLE, 6),
]


def solve_with(backend, make_universe, policy, goal, depth) -> tuple[float, int]:
    import coinweigh.kernels as k

    saved = (k.outcome_codes, k.MaskTable, k.AnswerTable)
    k.outcome_codes, k.MaskTable, k.AnswerTable = backend.outcome_codes, backend.MaskTable, backend.AnswerTable
    try:
        start = time.perf_counter()
        s = Solver(make_universe(), policy, goal)
        value = s.solvable(s.full, depth) if depth is not None else s.optimal_depth()
        return time.perf_counter() - start, int(value)
    finally:
        k.outcome_codes, k.MaskTable, k.AnswerTable = saved


def split_sizes_rate(backend, repeat: int) -> float:
    u = Universe.hunt_4_1_4()
    s = Solver(u, PanPolicy.HUGE, Goal.FIND_MIDDLE)
    n, c = u.n, u.c
    classes = bytes(x - 1 for a in u.assignments for x in a.classes)
    coeffs = bytearray(len(s.weighings) * n)
    for w, weighing in enumerate(s.weighings):
        for coin in weighing.left:
            coeffs[w * n + coin] = 1
        for coin in weighing.right:
            coeffs[w * n + coin] = 2
    codes = backend.outcome_codes(classes, n, c, bytes(coeffs), len(s.weighings))
    table = backend.MaskTable(codes, len(s.weighings), len(u))
    start = time.perf_counter()
    for _ in range(repeat):
        table.split_sizes(s.full)
    return repeat / (time.perf_counter() - start)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    else:
        print("compiled kernels not built; timing the fallback only")

    print("case\tbackend\tseconds\tresult")
    for name, make, policy, goal, depth in CASES:
        for label, backend in backends:
            best = min(solve_with(backend, make, policy, goal, depth)[0] for _ in range(args.repeat))
            value = solve_with(backend, make, policy, goal, depth)[1]
            print(f"{name}\t{label}\t{best:.3f}\t{value}")
    print("\nsplit_sizes over the 630-assignment universe (1569 weighings)")
    for label, backend in backends:
        print(f"{label}\t{split_sizes_rate(backend, 50 * args.repeat):.0f} calls/s")


if __name__ == "__main__":
    main()
