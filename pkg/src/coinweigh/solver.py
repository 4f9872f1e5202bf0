"""Exact minimax solver over knowledge states.

A knowledge state is a bitset over an explicit list of admissible
assignments.  A weighing splits it into three children by outcome; the value
of a state is 0 when every member yields the same answer and otherwise
``1 + min over weighings of max over children``.  Search is depth-first under
a depth budget with iterative deepening; every state keeps proven lower and
upper bounds in a transposition table keyed by the raw bitset.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import kernels
from .model import Assignment, MiddleCoin, OrderedPartition, Weighing, partition_from_key, weak_order_key
from .scale import PanPolicy, outcome_under

MAX_UNIVERSE = 1 << 16
MAX_BUDGET = 16
_OUTCOME_KEYS = ("<", "=", ">")


class UniverseTooLarge(ValueError):
    pass


class Goal(enum.Enum):
    SORT = "sort"
    FIND_MIDDLE = "find-middle"


@dataclass(frozen=True)
class Universe:
    n: int
    c: int
    assignments: tuple[Assignment, ...]
    name: str = "custom"

    @classmethod
    def all(cls, n: int, c: int = 3) -> "Universe":
        rows = itertools.product(range(1, c + 1), repeat=n)
        return cls(n, c, tuple(Assignment(r, c) for r in rows), "all")

    @classmethod
    def one_middle(cls, n: int) -> "Universe":
        rows = (
            r
            for r in itertools.product((1, 2, 3), repeat=n)
            if r.count(2) == 1 and 1 in r and 3 in r
        )
        return cls(n, 3, tuple(Assignment(r) for r in rows), "one-middle")

    @classmethod
    def hunt_4_1_4(cls) -> "Universe":
        rows = (r for r in itertools.product((1, 2, 3), repeat=9) if r.count(1) == 4 and r.count(2) == 1)
        return cls(9, 3, tuple(Assignment(r) for r in rows), "hunt-4-1-4")

    @classmethod
    def custom(cls, assignments: Iterable[Assignment], name: str = "custom") -> "Universe":
        rows = tuple(assignments)
        if not rows:
            raise ValueError("empty universe")
        return cls(rows[0].n, rows[0].c, rows, name)

    @classmethod
    def named(cls, name: str, n: int | None = None, c: int = 3) -> "Universe":
        if name == "hunt-4-1-4":
            return cls.hunt_4_1_4()
        if n is None:
            raise ValueError(f"universe {name!r} needs n")
        if name == "all":
            return cls.all(n, c)
        if name == "one-middle":
            return cls.one_middle(n)
        raise ValueError(f"unknown universe {name!r}")

    def __len__(self) -> int:
        return len(self.assignments)


def candidate_weighings(n: int, policy: PanPolicy, equal_pans: bool = True) -> list[Weighing]:
    """Move list, in a fixed order.

    Tiny: every unordered pair, lower id on the left.  Huge: pairs of
    disjoint non-empty pans with the smallest coin on the left; with
    ``equal_pans`` only pans of equal size are produced.
    """
    if n < 2:
        return []
    if policy is PanPolicy.TINY:
        return [Weighing.pair(a, b) for a, b in itertools.combinations(range(n), 2)]
    out: list[Weighing] = []
    coins = range(n)
    for size in range(1, n // 2 + 1):
        for left in itertools.combinations(coins, size):
            rest = [x for x in coins if x not in left and x > left[0]]
            for right in itertools.combinations(rest, size):
                out.append(Weighing(left, right))
    if equal_pans:
        return out
    for lsize in range(1, n):
        for rsize in range(1, n - lsize + 1):
            if lsize == rsize:
                continue
            for left in itertools.combinations(coins, lsize):
                rest = [x for x in coins if x not in left and x > left[0]]
                for right in itertools.combinations(rest, rsize):
                    out.append(Weighing(left, right))
    return out


class Solver:
    """Minimax search for one (universe, pan policy, goal) triple."""

    def __init__(
        self,
        universe: Universe,
        policy: PanPolicy,
        goal: Goal = Goal.SORT,
        equal_pans: bool = True,
    ):
        if len(universe) > MAX_UNIVERSE:
            raise UniverseTooLarge(f"{len(universe)} assignments exceed {MAX_UNIVERSE}")
        self.universe = universe
        self.policy = policy
        self.goal = goal
        self.n = universe.n
        self.weighings = candidate_weighings(universe.n, policy, equal_pans)
        self.full = (1 << len(universe)) - 1

        n, c = universe.n, universe.c
        classes = bytes(x - 1 for a in universe.assignments for x in a.classes)
        coeffs = bytearray(len(self.weighings) * n)
        for w, weighing in enumerate(self.weighings):
            for coin in weighing.left:
                coeffs[w * n + coin] = 1
            for coin in weighing.right:
                coeffs[w * n + coin] = 2
        codes = kernels.outcome_codes(classes, n, c, bytes(coeffs), len(self.weighings))
        self.masks = kernels.MaskTable(codes, len(self.weighings), len(universe))

        ids: dict[object, int] = {}
        self.answer_of: list[object] = []
        per_assignment: list[int] = []
        for a in universe.assignments:
            key = self._answer_key(a)
            if key not in ids:
                ids[key] = len(ids)
                self.answer_of.append(key)
            per_assignment.append(ids[key])
        self.answers = kernels.AnswerTable(per_assignment, len(ids))

        self._lower: dict[int, int] = {}
        self._upper: dict[int, tuple[int, int]] = {}  # state -> (depth, move)
        self.nodes = 0

    def _answer_key(self, a: Assignment):
        if self.goal is Goal.SORT:
            return weak_order_key(a.classes)
        if a.classes.count(2) != 1:
            raise ValueError(f"{a.digits()} has no unique middle coin")
        return a.classes.index(2)

    def answer(self, key) -> OrderedPartition | MiddleCoin:
        if self.goal is Goal.SORT:
            return partition_from_key(key)
        return MiddleCoin(key)

    # --- state operations -------------------------------------------------

    def state_of(self, assignments: Iterable[Assignment]) -> int:
        index = {a: i for i, a in enumerate(self.universe.assignments)}
        state = 0
        for a in assignments:
            state |= 1 << index[a]
        return state

    def members(self, state: int) -> list[Assignment]:
        return [a for i, a in enumerate(self.universe.assignments) if (state >> i) & 1]

    def goal_met(self, state: int) -> OrderedPartition | MiddleCoin | None:
        if state == 0:
            raise ValueError("empty knowledge state")
        if self.answers.count(state) != 1:
            return None
        return self.answer(self.answer_of[self.answers.first(state)])

    def successors(self, state: int, w: int) -> tuple[int, int, int]:
        """Children for outcomes <, =, >.  Members with no forced outcome drop out."""
        return tuple(state & self.masks.mask(w, code) for code in range(3))

    def moves(self, state: int) -> Iterator[tuple[int, tuple[int, ...]]]:
        """Weighings that split ``state`` and are determined on all its members.

        Ordered by the size of the largest child, then move-list order; moves
        inducing an already-seen split are skipped.
        """
        size = state.bit_count()
        sizes = self.masks.split_sizes(state)
        ranked = []
        for w in range(len(self.weighings)):
            lt, eq, gt, und = sizes[4 * w : 4 * w + 4]
            if und or max(lt, eq, gt) == size:
                continue
            ranked.append((max(lt, eq, gt), w))
        ranked.sort()
        seen: set[frozenset[int]] = set()
        for _, w in ranked:
            children = self.successors(state, w)
            split = frozenset(ch for ch in children if ch)
            if split in seen:
                continue
            seen.add(split)
            yield w, children

    # --- search -------------------------------------------------------------

    def _lower_bound(self, state: int) -> int:
        distinct = self.answers.count(state)
        depth, cap = 0, 1
        while cap < distinct:
            cap *= 3
            depth += 1
        return depth

    def solvable(self, state: int, depth: int) -> bool:
        """True iff some decision tree of height <= depth settles ``state``."""
        known = self._upper.get(state)
        if known is not None and known[0] <= depth:
            return True
        if self._lower.get(state, 0) > depth:
            return False
        self.nodes += 1
        bound = self._lower_bound(state)
        if bound == 0:
            self._upper[state] = (0, -1)
            return True
        if bound > depth:
            self._lower[state] = max(self._lower.get(state, 0), bound)
            return False
        for w, children in self.moves(state):
            kids = sorted((ch for ch in children if ch), key=lambda s: -s.bit_count())
            if all(self.solvable(ch, depth - 1) for ch in kids):
                self._upper[state] = (depth, w)
                return True
        self._lower[state] = max(self._lower.get(state, 0), depth + 1)
        return False

    def optimal_depth(self, budget: int = MAX_BUDGET, state: int | None = None) -> int | None:
        """Exact minimax depth of ``state`` (the whole universe by default), or None past ``budget``."""
        if budget > MAX_BUDGET:
            raise ValueError(f"budget {budget} exceeds {MAX_BUDGET}")
        state = self.full if state is None else state
        d = self._lower_bound(state)
        while d <= budget:
            if self.solvable(state, d):
                return d
            d += 1
        return None

    def extract_tree(self, depth: int, state: int | None = None) -> dict:
        """Decision tree of height <= depth as nested JSON-ready dicts."""
        state = self.full if state is None else state
        if not self.solvable(state, depth):
            raise ValueError(f"no decision tree of depth {depth}")
        return self._tree(state, depth)

    def _tree(self, state: int, depth: int) -> dict:
        done = self.goal_met(state)
        if done is not None:
            return {"answer": answer_json(done)}
        d, w = self._upper[state]
        if d > depth:
            raise RuntimeError("transposition table lost a proven move")
        weighing = self.weighings[w]
        node: dict = {"weigh": {"left": list(weighing.left), "right": list(weighing.right)}}
        for key, child in zip(_OUTCOME_KEYS, self.successors(state, w)):
            node[key] = self._tree(child, d - 1) if child else None
        return node

    def check_tree(self, tree: dict, depth: int) -> list[str]:
        """Assignments (as digit strings) the tree answers wrongly or too slowly."""
        bad = []
        for a in self.universe.assignments:
            try:
                got, used = replay_tree(tree, a)
            except ValueError:
                bad.append(a.digits())
                continue
            if got != answer_json(self.answer(self._answer_key(a))) or used > depth:
                bad.append(a.digits())
        return bad


def answer_json(answer: OrderedPartition | MiddleCoin) -> dict:
    if isinstance(answer, MiddleCoin):
        return {"middle": answer.coin}
    return {"groups": answer.to_json()}


def replay_tree(tree: dict, a: Assignment) -> tuple[dict, int]:
    """Walk an assignment down a tree; returns the leaf answer and the weighings used."""
    node, used = tree, 0
    while "weigh" in node:
        w = Weighing(tuple(node["weigh"]["left"]), tuple(node["weigh"]["right"]))
        o = outcome_under(w, a)
        if o is None:
            raise ValueError(f"tree poses an undetermined weighing for {a.digits()}")
        node = node[o.value]
        used += 1
        if node is None:
            raise ValueError(f"tree has no branch for {a.digits()}")
    return node["answer"], used


def tree_depth(tree: dict | None) -> int:
    if tree is None or "weigh" not in tree:
        return 0
    return 1 + max(tree_depth(tree[k]) for k in _OUTCOME_KEYS)
