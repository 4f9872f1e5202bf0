"""Exhaustive verification of strategies over explicit universes."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .model import (
    Assignment,
    InconsistentComparisons,
    OrderedPartition,
    Transcript,
    analyze_comparisons,
    partition_from_key,
    weak_order_key,
)
from .scale import PanPolicy, Session, consistent
from .solver import Universe
from .strategies import REGISTRY, StrategyInfo, drive
from .strategies.base import Probe

MAX_RUNS = 1 << 16
MAX_BRUTE_N = 12


class InconsistentTranscript(ValueError):
    """No assignment is consistent with the transcript."""


@dataclass
class Failure:
    assignment: str
    reason: str
    transcript: list[tuple[list[int], list[int], str]] = field(default_factory=list)


@dataclass
class VerifyReport:
    strategy: str
    universe: str
    n: int
    bound: int
    runs: int = 0
    failures: list[Failure] = field(default_factory=list)
    histogram: Counter = field(default_factory=Counter)

    @property
    def max_count(self) -> int:
        return max(self.histogram, default=0)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def bound_met(self) -> bool:
        return self.max_count <= self.bound

    @property
    def bound_tight(self) -> bool:
        return self.max_count == self.bound

    def tsv(self) -> str:
        fields = [
            ("strategy", self.strategy),
            ("universe", self.universe),
            ("n", self.n),
            ("runs", self.runs),
            ("failures", len(self.failures)),
            ("max", self.max_count),
            ("bound", self.bound),
            ("tight", "yes" if self.bound_tight else "no"),
        ]
        return "\t".join(f"{k}={v}" for k, v in fields)

    def to_json(self) -> dict:
        return {
            "strategy": self.strategy,
            "universe": self.universe,
            "n": self.n,
            "runs": self.runs,
            "failures": [
                {"assignment": f.assignment, "reason": f.reason, "transcript": f.transcript}
                for f in self.failures
            ],
            "max_count": self.max_count,
            "histogram": {str(k): self.histogram[k] for k in sorted(self.histogram)},
            "bound": self.bound,
            "bound_met": self.bound_met,
            "bound_tight": self.bound_tight,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _info(strategy: str | StrategyInfo) -> StrategyInfo:
    if isinstance(strategy, StrategyInfo):
        return strategy
    try:
        return REGISTRY[strategy]
    except KeyError:
        raise KeyError(f"unknown strategy {strategy!r}") from None


def universe_for(strategy: str | StrategyInfo, n: int, name: str | None = None, **params) -> Universe:
    """The universe a strategy is checked over; the class count follows the strategy."""
    info = _info(strategy)
    return Universe.named(name or info.universe, n, info.classes(**params))


def _steps(t: Transcript) -> list[tuple[list[int], list[int], str]]:
    return [(list(w.left), list(w.right), o.value) for w, o in t]


def exhaustive_check(
    strategy: str | StrategyInfo,
    universe: Universe,
    policy: PanPolicy | None = None,
    **params,
) -> VerifyReport:
    """Run the strategy once per (assignment, public input) and compare with the truth."""
    info = _info(strategy)
    policy = policy or info.policy
    jobs = [(a, inst) for a in universe.assignments for inst in info.instances(a)]
    if len(jobs) > MAX_RUNS:
        raise ValueError(f"{len(jobs)} runs exceed the guard of {MAX_RUNS}")
    report = VerifyReport(info.name, universe.name, universe.n, info.bound(universe.n, **params))
    for a, inst in jobs:
        session = Session(a, policy)
        report.runs += 1
        try:
            got = drive(info.make(a.n, **params, **inst), session.evaluate)
        except Exception as exc:  # any crash is a failed run, not an aborted check
            report.failures.append(
                Failure(a.digits(), f"{type(exc).__name__}: {exc}", _steps(session.transcript))
            )
            continue
        report.histogram[session.count] += 1
        want = info.expected(a)
        if got != want:
            report.failures.append(
                Failure(a.digits(), f"answered {got}, expected {want}", _steps(session.transcript))
            )
    return report


def forced_by_enumeration(t: Transcript, n: int, c: int = 3) -> OrderedPartition | None:
    """Weak order shared by every assignment consistent with ``t``, by depth-first search.

    A weighing is checked as soon as its largest coin has a class, so dead
    branches are cut early.  Stops at the second distinct weak order.
    """
    if n > MAX_BRUTE_N:
        raise ValueError(f"enumeration limited to n <= {MAX_BRUTE_N}")
    due: list[list[tuple]] = [[] for _ in range(n)]
    for w, o in t:
        w.check_range(n)
        due[max(w.coins)].append((w, o))
    classes = [0] * n
    seen: set[tuple[int, ...]] = set()

    def extend(i: int) -> bool:
        if i == n:
            seen.add(weak_order_key(classes))
            return len(seen) > 1
        for x in range(1, c + 1):
            classes[i] = x
            if due[i]:
                # unassigned coins never occur in weighings due here
                a = Assignment(tuple(classes[: i + 1]) + (1,) * (n - i - 1), c)
                if not all(consistent(a, w, o) for w, o in due[i]):
                    continue
            if extend(i + 1):
                return True
        return False

    extend(0)
    if not seen:
        raise InconsistentTranscript("no assignment is consistent with the transcript")
    if len(seen) > 1:
        return None
    return partition_from_key(next(iter(seen)))


def transcript_sorted_unique(
    t: Transcript, n: int, policy: PanPolicy = PanPolicy.TINY, c: int = 3
) -> OrderedPartition | None:
    """The weak order the transcript forces, or ``None`` while several remain possible.

    One-against-one transcripts are decided from the comparison graph; any
    transcript with multi-coin pans is decided by enumeration.
    """
    if policy is PanPolicy.TINY and all(w.is_single for w, _ in t):
        triples = [(w.left[0], w.right[0], o) for w, o in t]
        for a, b, _ in triples:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"coin id out of range for n={n}")
        try:
            return analyze_comparisons(n, c, triples).partition()
        except InconsistentComparisons as exc:
            raise InconsistentTranscript(str(exc)) from None
    return forced_by_enumeration(t, n, c)


class AuditProbe(Probe):
    """Checks every reported label and set-aside link against the hidden classes."""

    ALLOWED = {"L": {1, 2}, "H": {2, 3}}

    def __init__(self, hidden: Assignment):
        self.hidden = hidden
        self.problems: list[str] = []

    def label(self, coin: int, mark: str) -> None:
        cls = self.hidden.classes[coin]
        if cls not in self.ALLOWED.get(mark, set()):
            self.problems.append(f"coin {coin} of class {cls} labelled {mark}")

    def match(self, coin: int, other: int) -> None:
        a, b = self.hidden.classes[coin], self.hidden.classes[other]
        if a != b:
            self.problems.append(f"coin {coin} (class {a}) linked to coin {other} (class {b})")


def label_problems(strategy: str | StrategyInfo, universe: Universe, **params) -> list[tuple[str, str]]:
    info = _info(strategy)
    found: list[tuple[str, str]] = []
    for a in universe.assignments:
        for inst in info.instances(a):
            probe = AuditProbe(a)
            session = Session(a, info.policy)
            drive(info.make(a.n, probe=probe, **params, **inst), session.evaluate)
            found.extend((a.digits(), p) for p in probe.problems)
    return found


def label_audit(strategy: str | StrategyInfo, universe: Universe, **params) -> bool:
    """True iff no run ever mislabels a coin or links coins of different classes."""
    return not label_problems(strategy, universe, **params)
