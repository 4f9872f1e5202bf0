"""Huge-pan strategies for the universe with exactly one middle coin.

Marks: ``"L"`` means class 1 or 2, ``"H"`` means class 2 or 3.
"""

from __future__ import annotations

from typing import Sequence

from ..model import MiddleCoin, Outcome, Weighing
from .base import NULL_PROBE, Probe, expand_classes, pair_round


class InfeasibleSplit(RuntimeError):
    """No pile split satisfies the size and mark constraints."""


def ceil_log3(m: int) -> int:
    k, p = 0, 1
    while p < m:
        p *= 3
        k += 1
    return k


def ternary_middle_search(
    marks: dict[int, str],
    known: dict[int, int] | None = None,
    spare: Sequence[int] = (),
):
    """Find the single middle coin among marked candidates in ceil(log3 m) weighings.

    ``known`` maps already-resolved coins to their classes and is extended in
    place as candidates are ruled out.  ``spare`` lists coins known not to be
    the middle but of unknown extreme class; they are only needed when two
    differently marked candidates remain and nothing has a known class.
    Returns the middle coin.
    """
    known = {} if known is None else known
    cands = sorted(marks)
    if not cands:
        raise InfeasibleSplit("no candidates")

    def rule_out(coins):
        for x in coins:
            known[x] = 1 if marks[x] == "L" else 3

    while len(cands) > 3:
        m = len(cands)
        cap = 3 ** (ceil_log3(m) - 1)
        light = [x for x in cands if marks[x] == "L"]
        heavy = [x for x in cands if marks[x] == "H"]
        per_pan = (m - cap + 1) // 2
        a = max(0, per_pan - len(heavy) // 2)
        b = per_pan - a
        if 2 * a > len(light) or 2 * b > len(heavy):
            raise InfeasibleSplit(f"{len(light)} L / {len(heavy)} H cannot fill pans of {per_pan}")
        left = light[:a] + heavy[:b]
        right = light[a : 2 * a] + heavy[b : 2 * b]
        on_scale = set(left) | set(right)
        rest = [x for x in cands if x not in on_scale]
        o = yield Weighing(tuple(left), tuple(right))
        if o is Outcome.BALANCED:
            rule_out(on_scale)
            cands = rest
            continue
        # A lighter pan holds a middle H coin or faces a middle L coin.
        lighter, heavier = (left, right) if o is Outcome.LIGHTER else (right, left)
        new = [x for x in lighter if marks[x] == "H"] + [x for x in heavier if marks[x] == "L"]
        rule_out(set(cands) - set(new))
        cands = sorted(new)

    middle = yield from _small_pile(cands, marks, known, spare)
    rule_out(x for x in cands if x != middle)
    known[middle] = 2
    return middle


def _small_pile(cands: list[int], marks: dict[int, str], known: dict[int, int], spare):
    if len(cands) == 1:
        return cands[0]
    same = _same_marked(cands, marks)
    if same is not None:
        x, y = same
        o = yield Weighing.pair(x, y)
        if o is Outcome.BALANCED:
            (z,) = [c for c in cands if c not in (x, y)]
            return z
        # among two L coins the heavier is the middle; among two H coins the lighter
        if (o is Outcome.LIGHTER) == (marks[x] == "L"):
            return y
        return x
    lo, hi = (cands[0], cands[1]) if marks[cands[0]] == "L" else (cands[1], cands[0])
    ones = [x for x in sorted(known) if known[x] == 1]
    threes = [x for x in sorted(known) if known[x] == 3]
    if ones:
        o = yield Weighing.pair(lo, ones[0])
        return hi if o is Outcome.BALANCED else lo
    if threes:
        o = yield Weighing.pair(hi, threes[0])
        return lo if o is Outcome.BALANCED else hi
    if not spare:
        raise InfeasibleSplit("two candidates and no reference coin")
    # The spare is class 1 or 3.  lo > spare means lo is the middle; lo = spare
    # pins lo to class 1; lo < spare pins the spare to class 3.
    z = spare[0]
    o = yield Weighing.pair(lo, z)
    if o is Outcome.HEAVIER:
        return lo
    if o is Outcome.BALANCED:
        return hi
    o = yield Weighing.pair(hi, z)
    return lo if o is Outcome.BALANCED else hi


def _same_marked(cands, marks):
    for i, x in enumerate(cands):
        for y in cands[i + 1 :]:
            if marks[x] == marks[y]:
                return x, y
    return None


def ternary(marks: dict[int, str], probe: Probe = NULL_PROBE):
    """Standalone search over marked coins; answers with the middle coin."""
    for coin, mark in sorted(marks.items()):
        probe.label(coin, mark)
    middle = yield from ternary_middle_search(dict(marks))
    return MiddleCoin(middle)


def sort_middle_one(n: int, probe: Probe = NULL_PROBE):
    """Sort n coins containing exactly one middle coin in at most n weighings."""
    pairs, extra, matched = yield from pair_round(range(n), probe)
    if not pairs:
        raise InfeasibleSplit("all coins balanced: no middle coin present")
    marks: dict[int, str] = {}
    for lo, hi in pairs:
        marks[lo] = "L"
        marks[hi] = "H"
    if extra is not None:
        marks[extra] = yield from _classify_extra(extra, pairs[0][0])
        probe.label(extra, marks[extra])
    known: dict[int, int] = {}
    yield from ternary_middle_search(marks, known)
    return expand_classes(n, known, matched)


def _classify_extra(extra: int, light_coin: int):
    # With one middle coin, lighter-or-equal to an L coin means class 1 or 2.
    o = yield Weighing.pair(extra, light_coin)
    return "H" if o is Outcome.HEAVIER else "L"


def find_middle(n: int, probe: Probe = NULL_PROBE):
    """Find the middle coin in ceil(n/2) + ceil(log3 n) weighings.

    Disjoint pairs are compared once each; balanced pairs hold two equal
    extreme coins and are discarded.
    """
    marks: dict[int, str] = {}
    discarded: list[int] = []
    first_light = None
    for a in range(0, n - 1, 2):
        b = a + 1
        o = yield Weighing.pair(a, b)
        if o is Outcome.BALANCED:
            discarded += [a, b]
            probe.match(b, a)
            continue
        lo, hi = (a, b) if o is Outcome.LIGHTER else (b, a)
        marks[lo], marks[hi] = "L", "H"
        probe.label(lo, "L")
        probe.label(hi, "H")
        if first_light is None:
            first_light = lo
    if n % 2:
        extra = n - 1
        if first_light is None:
            return MiddleCoin(extra)
        marks[extra] = yield from _classify_extra(extra, first_light)
        probe.label(extra, marks[extra])
    middle = yield from ternary_middle_search(marks, {}, spare=discarded)
    return MiddleCoin(middle)
