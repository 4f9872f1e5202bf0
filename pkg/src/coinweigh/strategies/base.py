"""Uniform strategy protocol.

A strategy is a generator: it yields the next :class:`Weighing`, is sent the
:class:`Outcome`, and returns its answer (an :class:`OrderedPartition` or a
:class:`MiddleCoin`).  Sub-procedures compose with ``yield from``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Generator, Iterable, Union

from ..model import MiddleCoin, OrderedPartition, Outcome, Weighing

Answer = Union[OrderedPartition, MiddleCoin]
Strategy = Generator[Weighing, Outcome, Answer]


class Probe:
    """Instrumentation hook.  Strategies report labels and set-aside links here."""

    def label(self, coin: int, mark: str) -> None:
        pass

    def match(self, coin: int, other: int) -> None:
        pass


NULL_PROBE = Probe()


@dataclass(frozen=True)
class Weigh:
    weighing: Weighing


@dataclass(frozen=True)
class Done:
    answer: Answer


class Stepper:
    """Step-wise driver: ``start()`` then ``feed(outcome)`` until a :class:`Done`."""

    def __init__(self, strategy: Strategy):
        self._gen = strategy
        self._finished = False

    def _advance(self, send: Callable[[], Weighing]) -> Weigh | Done:
        if self._finished:
            raise RuntimeError("strategy already answered")
        try:
            return Weigh(send())
        except StopIteration as stop:
            self._finished = True
            return Done(stop.value)

    def start(self) -> Weigh | Done:
        return self._advance(lambda: next(self._gen))

    def feed(self, outcome: Outcome) -> Weigh | Done:
        return self._advance(lambda: self._gen.send(outcome))


def drive(strategy: Strategy, oracle: Callable[[Weighing], Outcome]) -> Answer:
    """Run a strategy to completion against any outcome oracle."""
    step = Stepper(strategy)
    state = step.start()
    while isinstance(state, Weigh):
        state = step.feed(oracle(state.weighing))
    return state.answer


def run(strategy: Strategy, session) -> tuple[Answer, int]:
    answer = drive(strategy, session.evaluate)
    return answer, session.count


def pair_round(coins: Iterable[int], probe: Probe = NULL_PROBE):
    """Weigh unknown coins two at a time until at most one is left.

    Unbalanced pairs come back as ``(lighter, heavier)``.  On a balance the
    higher id is set aside (linked to the lower one) and the lower id goes
    back to the front of the pile.  Returns ``(pairs, extra, matched)``.
    """
    pile = deque(sorted(coins))
    pairs: list[tuple[int, int]] = []
    matched: dict[int, int] = {}
    while len(pile) >= 2:
        a = pile.popleft()
        b = pile.popleft()
        o = yield Weighing.pair(a, b)
        if o is Outcome.BALANCED:
            matched[b] = a
            probe.match(b, a)
            pile.appendleft(a)
            continue
        lo, hi = (a, b) if o is Outcome.LIGHTER else (b, a)
        probe.label(lo, "L")
        probe.label(hi, "H")
        pairs.append((lo, hi))
    extra = pile[0] if pile else None
    return pairs, extra, matched


def pivot_sort(coins: list[int]):
    """Sort a pile holding at most two classes: compare the first coin to every other.

    Returns the non-empty groups in ascending order (one or two of them).
    """
    pivot = coins[0]
    lower: list[int] = []
    same = [pivot]
    upper: list[int] = []
    for other in coins[1:]:
        o = yield Weighing.pair(pivot, other)
        if o is Outcome.BALANCED:
            same.append(other)
        elif o is Outcome.LIGHTER:
            upper.append(other)
        else:
            lower.append(other)
    return [g for g in (lower, same, upper) if g]


def settle(matched: dict[int, int], coin: int) -> int:
    """Follow set-aside links to the active coin that carries the class."""
    seen = 0
    while coin in matched:
        coin = matched[coin]
        seen += 1
        if seen > len(matched):
            raise RuntimeError("cycle in set-aside links")
    return coin


def expand_groups(n: int, groups: list[list[int]], matched: dict[int, int]) -> OrderedPartition:
    """Attach set-aside coins to their carriers' groups."""
    where = {}
    for i, g in enumerate(groups):
        for coin in g:
            where[coin] = i
    full: list[list[int]] = [[] for _ in groups]
    for coin in range(n):
        full[where[settle(matched, coin)]].append(coin)
    return OrderedPartition.from_groups(full)


def expand_classes(n: int, known: dict[int, int], matched: dict[int, int]) -> OrderedPartition:
    """Partition from exact classes of the carriers."""
    classes = [known[settle(matched, coin)] for coin in range(n)]
    levels = sorted(set(classes))
    return OrderedPartition.from_groups(
        [coin for coin in range(n) if classes[coin] == v] for v in levels
    )
