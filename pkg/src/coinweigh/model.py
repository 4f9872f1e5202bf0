"""Core vocabulary: assignments, weighings, outcomes, transcripts and sorted answers.

Coins are dense 0-based integers.  Weight classes are ordinals ``1..c``
(class 1 lightest); no numeric weights live here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class Outcome(enum.Enum):
    """Result of one weighing, read from the left pan's point of view."""

    LIGHTER = "<"
    BALANCED = "="
    HEAVIER = ">"

    def flipped(self) -> "Outcome":
        if self is Outcome.LIGHTER:
            return Outcome.HEAVIER
        if self is Outcome.HEAVIER:
            return Outcome.LIGHTER
        return self

    @classmethod
    def from_sign(cls, sign: int) -> "Outcome":
        if sign < 0:
            return cls.LIGHTER
        if sign > 0:
            return cls.HEAVIER
        return cls.BALANCED

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Assignment:
    """Hidden mapping coin -> weight class."""

    classes: tuple[int, ...]
    c: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(int(x) for x in self.classes))
        if not self.classes:
            raise ValueError("an assignment needs at least one coin")
        if self.c < 1:
            raise ValueError(f"class count must be positive, got {self.c}")
        for coin, cls in enumerate(self.classes):
            if not 1 <= cls <= self.c:
                raise ValueError(f"coin {coin} has class {cls} outside 1..{self.c}")

    @classmethod
    def from_digits(cls, digits: str, c: int = 3) -> "Assignment":
        return cls(tuple(int(ch) for ch in digits), c)

    @property
    def n(self) -> int:
        return len(self.classes)

    def __getitem__(self, coin: int) -> int:
        return self.classes[coin]

    def __len__(self) -> int:
        return len(self.classes)

    def digits(self) -> str:
        return "".join(str(x) for x in self.classes)


@dataclass(frozen=True)
class Weighing:
    """Two disjoint, non-empty pans.  Ids are stored ascending."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self) -> None:
        left = tuple(self.left)
        right = tuple(self.right)
        if not left or not right:
            raise ValueError("both pans must hold at least one coin")
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise ValueError(f"duplicate coin in a pan: {left} vs {right}")
        if set(left) & set(right):
            raise ValueError(f"pans share coins: {left} vs {right}")
        if min(left + right) < 0:
            raise ValueError("coin ids are non-negative")
        object.__setattr__(self, "left", tuple(sorted(left)))
        object.__setattr__(self, "right", tuple(sorted(right)))

    @classmethod
    def pair(cls, a: int, b: int) -> "Weighing":
        return cls((a,), (b,))

    @property
    def coins(self) -> tuple[int, ...]:
        return self.left + self.right

    @property
    def is_single(self) -> bool:
        return len(self.left) == 1 and len(self.right) == 1

    def swapped(self) -> "Weighing":
        return Weighing(self.right, self.left)

    def check_range(self, n: int) -> None:
        top = max(self.coins)
        if top >= n:
            raise ValueError(f"coin {top} out of range for {n} coins")


@dataclass
class Transcript:
    """Append-only record of (weighing, outcome) steps."""

    steps: list[tuple[Weighing, Outcome]] = field(default_factory=list)

    def record(self, weighing: Weighing, outcome: Outcome) -> None:
        self.steps.append((weighing, outcome))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[tuple[Weighing, Outcome]]:
        return iter(self.steps)


@dataclass(frozen=True)
class OrderedPartition:
    """Groups of equal coins, ascending by weight.  No absolute class labels."""

    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        groups = tuple(tuple(sorted(g)) for g in self.groups)
        if any(not g for g in groups):
            raise ValueError("groups must be non-empty")
        seen: set[int] = set()
        for g in groups:
            if seen & set(g):
                raise ValueError("groups must be disjoint")
            seen.update(g)
        if seen != set(range(len(seen))):
            raise ValueError("groups must cover coins 0..n-1")
        object.__setattr__(self, "groups", groups)

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[int]]) -> "OrderedPartition":
        return cls(tuple(tuple(g) for g in groups))

    @property
    def n(self) -> int:
        return sum(len(g) for g in self.groups)

    def rank_of(self) -> list[int]:
        """Group index of every coin."""
        ranks = [0] * self.n
        for i, g in enumerate(self.groups):
            for coin in g:
                ranks[coin] = i
        return ranks

    def to_json(self) -> list[list[int]]:
        return [list(g) for g in self.groups]


@dataclass(frozen=True)
class MiddleCoin:
    """Answer of the find-the-middle goal."""

    coin: int


def weak_order_of(a: Assignment) -> OrderedPartition:
    buckets: dict[int, list[int]] = {}
    for coin, cls in enumerate(a.classes):
        buckets.setdefault(cls, []).append(coin)
    return OrderedPartition(tuple(tuple(buckets[k]) for k in sorted(buckets)))


def same_weak_order(a: Assignment, b: Assignment) -> bool:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n} coins")
    return weak_order_of(a) == weak_order_of(b)


def weak_order_key(classes: Sequence[int]) -> tuple[int, ...]:
    """Dense rank vector; equal keys <=> same weak order.  Cheap hashable form."""
    levels = sorted(set(classes))
    rank = {v: i for i, v in enumerate(levels)}
    return tuple(rank[v] for v in classes)


def partition_from_key(key: Sequence[int]) -> OrderedPartition:
    groups: list[list[int]] = [[] for _ in range(max(key) + 1)]
    for coin, r in enumerate(key):
        groups[r].append(coin)
    return OrderedPartition.from_groups(groups)


class InconsistentComparisons(ValueError):
    """No assignment satisfies the recorded one-against-one comparisons."""


@dataclass
class ComparisonAnalysis:
    """What one-against-one comparisons force about the weak order.

    Coins joined by balances form components; strict results give a DAG over
    components.  Longest paths bound every component's class to an interval
    ``[low, high]`` inside ``1..c``.  Two components without a connecting path
    can take any pair of values from their intervals, so their relation is
    forced exactly when a path joins them, the intervals are disjoint, or both
    intervals are the same single value.
    """

    n: int
    c: int
    component: list[int]
    members: list[list[int]]
    low: list[int]
    high: list[int]
    reach: list[int]
    topo: list[int]

    def is_open(self, u: int, v: int) -> bool:
        if (self.reach[u] >> v) & 1 or (self.reach[v] >> u) & 1:
            return False
        if self.high[u] < self.low[v] or self.high[v] < self.low[u]:
            return False
        return not (self.low[u] == self.high[u] == self.low[v] == self.high[v])

    def open_pairs(self) -> Iterator[tuple[int, int]]:
        m = len(self.members)
        for u in range(m):
            for v in range(u + 1, m):
                if self.is_open(u, v):
                    yield u, v

    def partition(self) -> OrderedPartition | None:
        if next(self.open_pairs(), None) is not None:
            return None
        # All pairs forced: pinned-equal components share a low value and every
        # strict pair has strictly increasing low, so sorting by low is exact.
        position = {u: i for i, u in enumerate(self.topo)}
        ranked = sorted(range(len(self.members)), key=lambda u: (self.low[u], position[u]))
        groups: list[list[int]] = []
        prev: int | None = None
        for u in ranked:
            if (
                prev is not None
                and self.low[u] == self.high[u] == self.low[prev] == self.high[prev]
            ):
                groups[-1].extend(self.members[u])
            else:
                groups.append(list(self.members[u]))
            prev = u
        return OrderedPartition.from_groups(groups)


def analyze_comparisons(
    n: int, c: int, comparisons: Iterable[tuple[int, int, Outcome]]
) -> ComparisonAnalysis:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    strict: list[tuple[int, int]] = []
    for a, b, o in comparisons:
        if o is Outcome.BALANCED:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        elif o is Outcome.LIGHTER:
            strict.append((a, b))
        else:
            strict.append((b, a))

    roots = sorted({find(x) for x in range(n)})
    index = {r: i for i, r in enumerate(roots)}
    component = [index[find(x)] for x in range(n)]
    m = len(roots)
    members: list[list[int]] = [[] for _ in range(m)]
    for x in range(n):
        members[component[x]].append(x)

    succ: list[set[int]] = [set() for _ in range(m)]
    for lo, hi in strict:
        u, v = component[lo], component[hi]
        if u == v:
            raise InconsistentComparisons(f"coins {lo} and {hi} are both equal and unequal")
        succ[u].add(v)

    indeg = [0] * m
    for u in range(m):
        for v in succ[u]:
            indeg[v] += 1
    topo = [u for u in range(m) if indeg[u] == 0]
    for u in topo:
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                topo.append(v)
    if len(topo) != m:
        raise InconsistentComparisons("strict comparisons form a cycle")

    low = [1] * m
    for u in topo:
        for v in succ[u]:
            low[v] = max(low[v], low[u] + 1)
    high = [c] * m
    reach = [0] * m
    for u in reversed(topo):
        for v in succ[u]:
            high[u] = min(high[u], high[v] - 1)
            reach[u] |= reach[v] | (1 << v)
    if any(low[u] > high[u] for u in range(m)):
        raise InconsistentComparisons(f"comparisons need more than {c} classes")
    return ComparisonAnalysis(n, c, component, members, low, high, reach, topo)


def forced_order(
    n: int, c: int, comparisons: Iterable[tuple[int, int, Outcome]]
) -> OrderedPartition | None:
    """Weak order forced by one-against-one comparisons, or ``None`` if still open."""
    return analyze_comparisons(n, c, comparisons).partition()
