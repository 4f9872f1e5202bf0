"""Sorting three classes with unlimited pans in at most n + 1 weighings."""

from __future__ import annotations

from ..model import OrderedPartition, Outcome, Weighing
from .base import NULL_PROBE, Probe, expand_classes, expand_groups, pair_round
from .tiny import _place_extra

# a pair (lighter, heavier) weighed against a (class 1, class 3) reference
_PAIR_VS_REFERENCE = {
    Outcome.LIGHTER: (1, 2),
    Outcome.BALANCED: (1, 3),
    Outcome.HEAVIER: (2, 3),
}


def sort_three_huge(n: int, probe: Probe = NULL_PROBE):
    """Four rounds.

    1. Pair unknown coins as in the tiny-pan strategy, keeping unbalanced pairs.
    2. Weigh the first pair against each later pair until one differs; a
       balance means both coins match componentwise.  The lighter of the two
       differing pairs starts with a class-1 coin and the heavier ends with a
       class-3 coin: that is the reference pair.
    3. Weigh every remaining pair against the reference, then settle the two
       leftover coins of the differing pairs against the reference coins.
    4. Weigh the extra coin against a middle coin (one of the two leftovers).
    """
    if n == 1:
        return OrderedPartition(((0,),))
    pairs, extra, matched = yield from pair_round(range(n), probe)
    if not pairs:
        return OrderedPartition((tuple(range(n)),))

    first = pairs[0]
    split_at = None
    o = Outcome.BALANCED
    for i in range(1, len(pairs)):
        o = yield Weighing(first, pairs[i])
        if o is not Outcome.BALANCED:
            split_at = i
            break
        lo, hi = pairs[i]
        matched[lo] = first[0]
        matched[hi] = first[1]
        probe.match(lo, first[0])
        probe.match(hi, first[1])

    if split_at is None:
        groups = [[first[0]], [first[1]]]
        if extra is not None:
            yield from _place_extra(extra, groups)
        return expand_groups(n, groups, matched)

    c1, d1 = first if o is Outcome.LIGHTER else pairs[split_at]
    c2, d2 = pairs[split_at] if o is Outcome.LIGHTER else first
    known = {c1: 1, d2: 3}
    for lo, hi in pairs[split_at + 1 :]:
        o = yield Weighing((lo, hi), (c1, d2))
        known[lo], known[hi] = _PAIR_VS_REFERENCE[o]

    o = yield Weighing.pair(d1, d2)
    known[d1] = 3 if o is Outcome.BALANCED else 2
    o = yield Weighing.pair(c2, c1)
    known[c2] = 1 if o is Outcome.BALANCED else 2

    if extra is not None:
        # the two differing pairs cannot both be (1, 3)
        middle = d1 if known[d1] == 2 else c2
        o = yield Weighing.pair(extra, middle)
        known[extra] = {Outcome.LIGHTER: 1, Outcome.BALANCED: 2, Outcome.HEAVIER: 3}[o]
    return expand_classes(n, known, matched)
