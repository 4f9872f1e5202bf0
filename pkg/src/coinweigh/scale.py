"""Balance-scale oracle.

Under the generic model the weights are linearly independent over the
integers, so a weighing has an outcome only when its sign is the same for
every admissible strictly increasing weight vector.  Writing ``d`` for the
class-count difference (left minus right) and ``s_j`` for its suffix sums,

    d . w = s_1 * w_1 + sum_{j >= 2} s_j * (w_j - w_{j-1})

with every basis term free and positive, which gives the suffix-sum rule in
:func:`determinacy`.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .model import (
    Assignment,
    MiddleCoin,
    OrderedPartition,
    Outcome,
    Transcript,
    Weighing,
)


class ScaleError(Exception):
    pass


class PanPolicyViolation(ScaleError):
    pass


class UndeterminedOutcome(ScaleError):
    """The weighing's sign depends on the actual weight values."""


class PanPolicy(enum.Enum):
    TINY = "tiny"
    HUGE = "huge"

    def check(self, w: Weighing) -> None:
        if self is PanPolicy.TINY and not w.is_single:
            raise PanPolicyViolation(
                f"tiny pans hold one coin each, got {list(w.left)} vs {list(w.right)}"
            )


@dataclass(frozen=True)
class WeightModel:
    """``weights is None`` means the generic (symbolic) model."""

    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.weights is None:
            return
        ws = tuple(Fraction(x) for x in self.weights)
        if not ws or ws[0] <= 0:
            raise ValueError("concrete weights must be positive")
        if any(a >= b for a, b in zip(ws, ws[1:])):
            raise ValueError("concrete weights must be strictly increasing")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def generic(cls) -> "WeightModel":
        return cls(None)

    @classmethod
    def concrete(cls, weights: Iterable) -> "WeightModel":
        return cls(tuple(weights))

    @property
    def is_generic(self) -> bool:
        return self.weights is None


GENERIC = WeightModel.generic()


def delta_vector(w: Weighing, a: Assignment) -> tuple[int, ...]:
    w.check_range(a.n)
    d = [0] * a.c
    for coin in w.left:
        d[a[coin] - 1] += 1
    for coin in w.right:
        d[a[coin] - 1] -= 1
    return tuple(d)


def determinacy(d: Sequence[int]) -> Outcome | None:
    """Forced outcome of a class-count difference, or ``None`` if undetermined."""
    s = 0
    pos = neg = False
    for x in reversed(d):
        s += x
        if s > 0:
            pos = True
        elif s < 0:
            neg = True
    if pos and neg:
        return None
    if pos:
        return Outcome.HEAVIER
    if neg:
        return Outcome.LIGHTER
    # all suffix sums zero means d itself is zero
    return Outcome.BALANCED


def outcome_under(w: Weighing, a: Assignment, model: WeightModel = GENERIC) -> Outcome | None:
    if model.is_generic:
        return determinacy(delta_vector(w, a))
    w.check_range(a.n)
    if len(model.weights) != a.c:
        raise ValueError(f"model has {len(model.weights)} weights for {a.c} classes")
    left = sum(model.weights[a[i] - 1] for i in w.left)
    right = sum(model.weights[a[i] - 1] for i in w.right)
    return Outcome.from_sign((left > right) - (left < right))


def consistent(a: Assignment, w: Weighing, o: Outcome, model: WeightModel = GENERIC) -> bool:
    return outcome_under(w, a, model) is o


@dataclass
class Session:
    """One run: a hidden assignment queried through a policed scale."""

    hidden: Assignment
    policy: PanPolicy = PanPolicy.TINY
    model: WeightModel = GENERIC
    transcript: Transcript = field(default_factory=Transcript)

    @property
    def count(self) -> int:
        return len(self.transcript)

    @property
    def n(self) -> int:
        return self.hidden.n

    def evaluate(self, w: Weighing) -> Outcome:
        self.policy.check(w)
        o = outcome_under(w, self.hidden, self.model)
        if o is None:
            raise UndeterminedOutcome(
                f"{list(w.left)} vs {list(w.right)} on {self.hidden.digits()} "
                f"has no outcome under generic weights"
            )
        self.transcript.record(w, o)
        return o


def step_record(k: int, w: Weighing, o: Outcome) -> dict:
    return {"step": k, "left": list(w.left), "right": list(w.right), "outcome": o.value}


def answer_record(answer: OrderedPartition | MiddleCoin) -> dict:
    if isinstance(answer, MiddleCoin):
        return {"answer": {"middle": answer.coin}}
    return {"answer": {"groups": answer.to_json()}}


def dump_transcript(
    transcript: Transcript,
    answer: OrderedPartition | MiddleCoin | None,
    out: TextIO,
    extra: Sequence[dict] | None = None,
) -> None:
    """Write the JSONL form: one line per step, then the answer line."""
    for k, (w, o) in enumerate(transcript, start=1):
        rec = step_record(k, w, o)
        if extra is not None:
            rec.update(extra[k - 1])
        out.write(json.dumps(rec) + "\n")
    if answer is not None:
        out.write(json.dumps(answer_record(answer)) + "\n")


def load_transcript(lines: Iterable[str]) -> tuple[Transcript, OrderedPartition | MiddleCoin | None]:
    t = Transcript()
    answer: OrderedPartition | MiddleCoin | None = None
    for line in lines:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        if "answer" in rec:
            body = rec["answer"]
            if "middle" in body:
                answer = MiddleCoin(int(body["middle"]))
            else:
                answer = OrderedPartition.from_groups(body["groups"])
        else:
            t.record(Weighing(tuple(rec["left"]), tuple(rec["right"])), Outcome(rec["outcome"]))
    return t, answer
