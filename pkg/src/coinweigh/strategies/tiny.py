"""Sorting with one coin per pan."""

from __future__ import annotations

import random
from collections import defaultdict

from ..model import OrderedPartition, Outcome, Weighing, analyze_comparisons
from .base import NULL_PROBE, Probe, expand_groups, pair_round, pivot_sort


def sort_two_tiny(n: int, probe: Probe = NULL_PROBE):
    """Two weight classes: compare coin 0 with every other coin (n - 1 weighings)."""
    if n == 1:
        return OrderedPartition(((0,),))
    groups = yield from pivot_sort(list(range(n)))
    return OrderedPartition.from_groups(groups)


def sort_three_tiny(n: int, probe: Probe = NULL_PROBE):
    """Three classes in at most ceil(3n/2) - 2 weighings.

    Round 1 pairs unknown coins into a lighter pile and a heavier pile.
    Round 2 pivot-sorts each pile: the lighter pile holds classes 1-2, the
    heavier pile 2-3, and a second class in either pile pins both piles.
    Round 3 places the leftover coin.
    """
    if n == 1:
        return OrderedPartition(((0,),))
    pairs, extra, matched = yield from pair_round(range(n), probe)
    if not pairs:
        # every weighing balanced: one chain of equal coins
        return OrderedPartition((tuple(range(n)),))

    light = yield from pivot_sort([lo for lo, _ in pairs])
    heavy = yield from pivot_sort([hi for _, hi in pairs])
    # A class-2 coin in the light pile has a class-3 partner, and a class-2
    # coin in the heavy pile has a class-1 partner, so a lone group on one
    # side is the outer class whenever the other side splits.
    if len(light) == 2 and len(heavy) == 2:
        groups = [light[0], light[1] + heavy[0], heavy[1]]
    elif len(light) == 2:
        groups = [light[0], light[1], heavy[0]]
    elif len(heavy) == 2:
        groups = [light[0], heavy[0], heavy[1]]
    else:
        groups = [light[0], heavy[0]]

    if extra is not None:
        yield from _place_extra(extra, groups)
    return expand_groups(n, groups, matched)


def _place_extra(extra: int, groups: list[list[int]]):
    """Insert one unknown coin into two or three ordered groups (at most 2 weighings)."""
    if len(groups) == 3:
        o = yield Weighing.pair(extra, groups[1][0])
        groups[{Outcome.LIGHTER: 0, Outcome.BALANCED: 1, Outcome.HEAVIER: 2}[o]].append(extra)
        return
    o = yield Weighing.pair(extra, groups[0][0])
    if o is Outcome.LIGHTER:
        groups.insert(0, [extra])
    elif o is Outcome.BALANCED:
        groups[0].append(extra)
    else:
        o = yield Weighing.pair(extra, groups[1][0])
        if o is Outcome.LIGHTER:
            groups.insert(1, [extra])
        elif o is Outcome.BALANCED:
            groups[1].append(extra)
        else:
            groups.append([extra])


def sort_k_tiny(n: int, k: int, probe: Probe = NULL_PROBE):
    """``k`` classes: peel the extreme classes off pile by pile, then pivot-sort.

    Every pile carries the interval of classes its coins may have.  A round
    pairs the coins of each pile of width three or more: lighter coins lose
    the pile's top class, heavier coins lose its bottom class, balanced coins
    are set aside.  Piles with equal intervals merge.  After ``k - 2`` rounds
    every pile spans two classes and is pivot-sorted.  The comparisons so far
    usually force the full order; any pair of groups left open is compared
    directly.
    """
    if not 2 <= k:
        raise ValueError(f"need k >= 2, got {k}")
    if n == 1:
        return OrderedPartition(((0,),))
    log: list[tuple[int, int, Outcome]] = []

    def logged(gen):
        # replay a sub-procedure while keeping a copy of its comparisons
        try:
            w = next(gen)
            while True:
                o = yield w
                log.append((w.left[0], w.right[0], o))
                w = gen.send(o)
        except StopIteration as stop:
            return stop.value

    piles: dict[tuple[int, int], list[int]] = {(1, k): list(range(n))}
    while any(hi - lo >= 2 and len(coins) > 1 for (lo, hi), coins in piles.items()):
        merged: dict[tuple[int, int], list[int]] = defaultdict(list)
        for (lo, hi), coins in sorted(piles.items()):
            if hi - lo < 2 or len(coins) < 2:
                merged[(lo, hi)].extend(coins)
                continue
            pairs, extra, _ = yield from logged(pair_round(coins, probe))
            light = [a for a, _ in pairs]
            heavy = [b for _, b in pairs]
            if extra is not None:
                if light:
                    o = yield Weighing.pair(extra, light[0])
                    log.append((extra, light[0], o))
                    if o is Outcome.LIGHTER:
                        light.append(extra)
                    elif o is Outcome.HEAVIER:
                        heavy.append(extra)
                else:
                    # the whole pile balanced into one coin
                    merged[(lo, hi)].append(extra)
            merged[(lo, hi - 1)].extend(light)
            merged[(lo + 1, hi)].extend(heavy)
        piles = {key: sorted(coins) for key, coins in merged.items() if coins}

    for (lo, hi), coins in sorted(piles.items()):
        if hi > lo and len(coins) > 1:
            yield from logged(pivot_sort(coins))

    while True:
        analysis = analyze_comparisons(n, k, log)
        answer = analysis.partition()
        if answer is not None:
            return answer
        u, v = _most_informative_open_pair(analysis)
        a, b = analysis.members[u][0], analysis.members[v][0]
        o = yield Weighing.pair(a, b)
        log.append((a, b, o))


def _most_informative_open_pair(analysis) -> tuple[int, int]:
    # prefer pairs whose intervals overlap least: one comparison settles them
    def width(pair):
        u, v = pair
        overlap = min(analysis.high[u], analysis.high[v]) - max(analysis.low[u], analysis.low[v])
        return (overlap, pair)

    return min(analysis.open_pairs(), key=width)


def random_tiny(n: int, c: int = 3, seed: int | None = None, waste: float = 0.0):
    """A legal but aimless strategy: compare random pairs until sorted.

    With probability ``waste`` the pair is any two coins, even ones whose
    relation is already known; otherwise it straddles a still-open pair.
    """
    rng = random.Random(seed)
    log: list[tuple[int, int, Outcome]] = []
    while True:
        analysis = analyze_comparisons(n, c, log)
        answer = analysis.partition()
        if answer is not None:
            return answer
        if rng.random() < waste:
            a, b = rng.sample(range(n), 2)
        else:
            u, v = rng.choice(list(analysis.open_pairs()))
            a = rng.choice(analysis.members[u])
            b = rng.choice(analysis.members[v])
        if rng.random() < 0.5:
            a, b = b, a
        o = yield Weighing.pair(a, b)
        log.append((a, b, o))
