"""Adversary for one-against-one weighings.

Every coin carries a label: ``U`` (never weighed), ``L`` (was lighter), or
``H`` (was heavier).  Outcomes follow six fixed rules (U<U, U>L, U<H, L<H,
L=L, H=H).  Balances inside the L or H group join equality components, and
the adversary tracks ``s = 1.5u + l + h`` with ``u`` unweighed coins and
``l``, ``h`` component counts.  ``s`` starts at ``1.5n`` and no weighing
lowers it by more than one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TextIO

from .model import Assignment, OrderedPartition, Outcome, Transcript, Weighing, weak_order_of
from .scale import PanPolicyViolation, consistent, step_record, answer_record
from .strategies import REGISTRY, drive
from .strategies.base import Answer

# (label of the lighter-or-equal side, label of the other) -> rule number
RULES = {
    ("U", "U"): 1,
    ("L", "U"): 2,
    ("U", "H"): 3,
    ("L", "H"): 4,
    ("L", "L"): 5,
    ("H", "H"): 6,
}

# allowed change of 2s per rule (s is kept doubled to stay integral)
RULE_DELTAS = {1: {-2}, 2: {-1}, 3: {-1}, 4: {0}, 5: {-2, 0}, 6: {-2, 0}}


class StrategyUnsound(Exception):
    """A strategy answered something the transcript does not force."""


@dataclass
class AdversaryState:
    n: int
    labels: list[str] = field(default_factory=list)
    parent: list[int] = field(default_factory=list)
    u: int = 0
    l: int = 0
    h: int = 0

    def __post_init__(self) -> None:
        if not self.labels:
            self.labels = ["U"] * self.n
            self.parent = list(range(self.n))
            self.u = self.n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def _mark(self, coin: int, label: str) -> None:
        self.labels[coin] = label
        self.u -= 1
        if label == "L":
            self.l += 1
        else:
            self.h += 1

    @property
    def doubled_potential(self) -> int:
        return 3 * self.u + 2 * self.l + 2 * self.h


def potential(state: AdversaryState) -> Fraction:
    return Fraction(state.doubled_potential, 2)


def answer(state: AdversaryState, w: Weighing) -> tuple[Outcome, int]:
    """Outcome for a one-against-one weighing and the rule that produced it.

    Labels are updated in place.  Two unweighed coins: the left one is
    declared lighter.
    """
    if not w.is_single:
        raise PanPolicyViolation("the adversary answers one-against-one weighings only")
    w.check_range(state.n)
    a, b = w.left[0], w.right[0]
    # orient so that (x, y) is listed as in RULES; flip records a swap of pans
    if (state.labels[a], state.labels[b]) in RULES:
        x, y, flip = a, b, False
    else:
        x, y, flip = b, a, True
    rule = RULES[(state.labels[x], state.labels[y])]
    if rule == 1:
        state._mark(x, "L")
        state._mark(y, "H")
        o = Outcome.LIGHTER
    elif rule == 2:
        state._mark(y, "H")
        o = Outcome.LIGHTER
    elif rule == 3:
        state._mark(x, "L")
        o = Outcome.LIGHTER
    elif rule == 4:
        o = Outcome.LIGHTER
    else:
        rx, ry = state.find(x), state.find(y)
        if rx != ry:
            state.parent[max(rx, ry)] = min(rx, ry)
            if rule == 5:
                state.l -= 1
            else:
                state.h -= 1
        o = Outcome.BALANCED
    return (o.flipped() if flip else o), rule


def witness(state: AdversaryState, c: int = 3) -> Assignment:
    """L -> class 1, H -> class c, U -> class 2 (class 1 when c = 2)."""
    mid = 2 if c >= 3 else 1
    table = {"L": 1, "H": c, "U": mid}
    return Assignment(tuple(table[x] for x in state.labels), c)


@dataclass
class PlayTrace:
    transcript: Transcript
    answer: Answer
    rules: list[int]
    potentials: list[int]  # doubled s before the first weighing, then after each one
    state: AdversaryState

    @property
    def count(self) -> int:
        return len(self.transcript)

    def potential_strings(self) -> list[str]:
        return [f"{p}/2" for p in self.potentials]

    def dump(self, out: TextIO) -> None:
        for k, (w, o) in enumerate(self.transcript, start=1):
            rec = step_record(k, w, o)
            rec["s"] = f"{self.potentials[k]}/2"
            out.write(json.dumps(rec) + "\n")
        out.write(json.dumps(answer_record(self.answer)) + "\n")


def play_strategy(strategy, n: int, c: int = 3, check_witness: bool = False) -> PlayTrace:
    """Run any tiny-pan strategy against the adversary, recording rules and potential."""
    state = AdversaryState(n)
    transcript = Transcript()
    rules: list[int] = []
    potentials = [state.doubled_potential]

    def oracle(w: Weighing) -> Outcome:
        o, rule = answer(state, w)
        transcript.record(w, o)
        rules.append(rule)
        potentials.append(state.doubled_potential)
        if check_witness:
            wit = witness(state, c)
            for past_w, past_o in transcript:
                if not consistent(wit, past_w, past_o):
                    raise StrategyUnsound(f"witness {wit.digits()} contradicts the transcript")
        return o

    result = drive(strategy, oracle)
    return PlayTrace(transcript, result, rules, potentials, state)


def play(strategy_name: str, n: int, **params) -> PlayTrace:
    """Play a registered tiny-pan strategy and check its answer is forced."""
    from .verify import transcript_sorted_unique

    info = REGISTRY[strategy_name]
    if info.policy.value != "tiny":
        raise ValueError(f"{strategy_name} does not use tiny pans")
    c = info.classes(**params)
    trace = play_strategy(info.make(n, **params), n, c)
    wit = witness(trace.state, c)
    forced = transcript_sorted_unique(trace.transcript, n, info.policy, c)
    if forced is None or not isinstance(trace.answer, OrderedPartition):
        raise StrategyUnsound(f"{strategy_name} answered before the order was forced")
    if forced != trace.answer:
        raise StrategyUnsound(f"{strategy_name} answered {trace.answer} but {forced} is forced")
    if weak_order_of(wit) != trace.answer:
        raise StrategyUnsound(f"answer disagrees with the adversary witness {wit.digits()}")
    return trace
