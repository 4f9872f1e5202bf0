"""Strategies addressable by stable names."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..model import Assignment, MiddleCoin, OrderedPartition, weak_order_of
from ..scale import PanPolicy
from .base import (
    NULL_PROBE,
    Answer,
    Done,
    Probe,
    Stepper,
    Strategy,
    Weigh,
    drive,
    pair_round,
    pivot_sort,
    run,
)
from .huge import sort_three_huge
from .middle import (
    InfeasibleSplit,
    ceil_log3,
    find_middle,
    sort_middle_one,
    ternary,
    ternary_middle_search,
)
from .tiny import random_tiny, sort_k_tiny, sort_three_tiny, sort_two_tiny

SORT = "sort"
MIDDLE = "middle"


def _ceil_half(x: int) -> int:
    return -(-x // 2)


@dataclass(frozen=True)
class StrategyInfo:
    """Registry entry.

    ``make(n, probe, **instance)`` builds a fresh strategy; ``instances`` lists
    the public inputs a run may receive for a given hidden assignment (only
    the standalone ternary search takes any).  ``bound(n, **params)`` is the
    claimed worst-case weighing count.
    """

    name: str
    make: Callable[..., Strategy]
    policy: PanPolicy
    goal: str
    bound: Callable[..., int]
    classes: Callable[..., int] = lambda **params: 3
    universe: str = "all"
    labels: bool = False
    instances: Callable[[Assignment], list[dict]] = lambda a: [{}]

    def expected(self, a: Assignment) -> Answer:
        if self.goal == MIDDLE:
            return MiddleCoin(a.classes.index(2))
        return weak_order_of(a)


def _ternary_instances(a: Assignment) -> list[dict]:
    marks = {i: ("L" if x == 1 else "H") for i, x in enumerate(a.classes) if x != 2}
    mid = a.classes.index(2)
    return [{"marks": {**marks, mid: "L"}}, {"marks": {**marks, mid: "H"}}]


REGISTRY: dict[str, StrategyInfo] = {
    info.name: info
    for info in (
        StrategyInfo(
            "sort2-tiny",
            lambda n, probe=NULL_PROBE, **_: sort_two_tiny(n, probe),
            PanPolicy.TINY,
            SORT,
            bound=lambda n, **_: max(n - 1, 0),
            classes=lambda **_: 2,
        ),
        StrategyInfo(
            "sort3-tiny",
            lambda n, probe=NULL_PROBE, **_: sort_three_tiny(n, probe),
            PanPolicy.TINY,
            SORT,
            bound=lambda n, **_: max(_ceil_half(3 * n) - 2, 0),
            labels=True,
        ),
        StrategyInfo(
            "sortk-tiny",
            lambda n, probe=NULL_PROBE, k=3, **_: sort_k_tiny(n, k, probe),
            PanPolicy.TINY,
            SORT,
            bound=lambda n, k=3, **_: max(k * (n // 2) + 1 + (k - 1) * (k - 4) // 2, 0),
            classes=lambda k=3, **_: k,
        ),
        StrategyInfo(
            "sort-mid1",
            lambda n, probe=NULL_PROBE, **_: sort_middle_one(n, probe),
            PanPolicy.HUGE,
            SORT,
            bound=lambda n, **_: n,
            universe="one-middle",
            labels=True,
        ),
        StrategyInfo(
            "find-mid",
            lambda n, probe=NULL_PROBE, **_: find_middle(n, probe),
            PanPolicy.HUGE,
            MIDDLE,
            bound=lambda n, **_: _ceil_half(n) + ceil_log3(n),
            universe="one-middle",
            labels=True,
        ),
        StrategyInfo(
            "sort3-huge",
            lambda n, probe=NULL_PROBE, **_: sort_three_huge(n, probe),
            PanPolicy.HUGE,
            SORT,
            bound=lambda n, **_: n + 1,
            labels=True,
        ),
        StrategyInfo(
            "ternary",
            lambda n, probe=NULL_PROBE, marks=None, **_: ternary(marks, probe),
            PanPolicy.HUGE,
            MIDDLE,
            bound=lambda n, **_: ceil_log3(n),
            universe="one-middle",
            labels=True,
            instances=_ternary_instances,
        ),
    )
}


def get(name: str) -> StrategyInfo:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown strategy {name!r}; known: {', '.join(REGISTRY)}") from None


__all__ = [
    "REGISTRY",
    "SORT",
    "MIDDLE",
    "StrategyInfo",
    "get",
    "Answer",
    "Done",
    "Probe",
    "Stepper",
    "Strategy",
    "Weigh",
    "drive",
    "run",
    "pair_round",
    "pivot_sort",
    "InfeasibleSplit",
    "ceil_log3",
    "find_middle",
    "random_tiny",
    "sort_k_tiny",
    "sort_middle_one",
    "sort_three_huge",
    "sort_three_tiny",
    "sort_two_tiny",
    "ternary",
    "ternary_middle_search",
    "OrderedPartition",
]
