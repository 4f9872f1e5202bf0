from __future__ import annotations

import itertools
import random

import pytest

from coinweigh.model import (
    Assignment,
    InconsistentComparisons,
    OrderedPartition,
    Outcome,
    Weighing,
    analyze_comparisons,
    forced_order,
    partition_from_key,
    same_weak_order,
    weak_order_key,
    weak_order_of,
)

from conftest import all_assignments


def groups(a):
    return [list(g) for g in weak_order_of(Assignment(a)).groups]


@pytest.mark.parametrize(
    "classes, expected",
    [
        ([1, 1, 1], [[0, 1, 2]]),
        ([3, 1, 2], [[1], [2], [0]]),
        ([2, 2, 3, 3], [[0, 1], [2, 3]]),
    ],
)
def test_weak_order_examples(classes, expected):
    assert groups(classes) == expected


@pytest.mark.parametrize(
    "a, b, same",
    [([1, 1], [3, 3], True), ([1, 2], [1, 3], True), ([1, 2], [2, 1], False)],
)
def test_same_weak_order_examples(a, b, same):
    assert same_weak_order(Assignment(a), Assignment(b)) is same


def test_same_weak_order_size_mismatch():
    with pytest.raises(ValueError):
        same_weak_order(Assignment([1]), Assignment([1, 2]))


def _pairwise_relation(classes):
    # oracle: the sign of every coin pair
    n = len(classes)
    return tuple((classes[i] > classes[j]) - (classes[i] < classes[j]) for i in range(n) for j in range(n))


def test_weak_order_matches_pairwise_signs():
    for a in all_assignments(4) + all_assignments(3, 4):
        for b in all_assignments(a.n, a.c):
            assert same_weak_order(a, b) == (_pairwise_relation(a.classes) == _pairwise_relation(b.classes))


def test_invariant_under_increasing_relabel():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(1, 8)
        a = Assignment([rng.randint(1, 3) for _ in range(n)])
        image = sorted(rng.sample(range(1, 10), 3))
        b = Assignment([image[x - 1] for x in a.classes], 9)
        assert weak_order_of(a) == weak_order_of(b)


def test_same_weak_order_is_an_equivalence():
    rng = random.Random(11)
    pool = all_assignments(3)
    for _ in range(2000):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert same_weak_order(a, a)
        assert same_weak_order(a, b) == same_weak_order(b, a)
        if same_weak_order(a, b) and same_weak_order(b, c):
            assert same_weak_order(a, c)


@pytest.mark.parametrize("n", range(1, 8))
def test_equivalence_class_count(n):
    # oracle: weak orders with at most 3 blocks = sum_k k! S(n, k)
    stirling = [[0] * 4 for _ in range(n + 1)]
    stirling[0][0] = 1
    for i in range(1, n + 1):
        for k in range(1, 4):
            stirling[i][k] = k * stirling[i - 1][k] + stirling[i - 1][k - 1]
    expected = stirling[n][1] + 2 * stirling[n][2] + 6 * stirling[n][3]
    assert len({weak_order_key(a.classes) for a in all_assignments(n)}) == expected
    assert expected == 3**n - 2 * 2**n + 2


def test_key_round_trip():
    for a in all_assignments(4):
        assert partition_from_key(weak_order_key(a.classes)) == weak_order_of(a)


def test_assignment_validation():
    with pytest.raises(ValueError):
        Assignment([])
    with pytest.raises(ValueError):
        Assignment([1, 4])
    assert Assignment.from_digits("312").classes == (3, 1, 2)
    assert Assignment.from_digits("312").digits() == "312"


def test_weighing_validation():
    with pytest.raises(ValueError):
        Weighing((0,), (0,))
    with pytest.raises(ValueError):
        Weighing((), (1,))
    with pytest.raises(ValueError):
        Weighing((0, 0), (1,))
    w = Weighing((3, 1), (2,))
    assert w.left == (1, 3)
    with pytest.raises(ValueError):
        w.check_range(3)
    assert w.swapped() == Weighing((2,), (1, 3))


def test_outcome_flip():
    assert Outcome.LIGHTER.flipped() is Outcome.HEAVIER
    assert Outcome.BALANCED.flipped() is Outcome.BALANCED
    assert Outcome.from_sign(-4) is Outcome.LIGHTER


def test_partition_validation():
    with pytest.raises(ValueError):
        OrderedPartition.from_groups([[0], [0, 1]])
    with pytest.raises(ValueError):
        OrderedPartition.from_groups([[0], [2]])
    with pytest.raises(ValueError):
        OrderedPartition.from_groups([[0], []])
    p = OrderedPartition.from_groups([[2, 0], [1]])
    assert p.to_json() == [[0, 2], [1]]
    assert p.rank_of() == [0, 1, 0]


def _forced_by_brute_force(n, c, comparisons):
    keys = set()
    for a in all_assignments(n, c):
        ok = all(
            Outcome.from_sign((a[x] > a[y]) - (a[x] < a[y])) is o for x, y, o in comparisons
        )
        if ok:
            keys.add(weak_order_key(a.classes))
    if not keys:
        return "inconsistent"
    return partition_from_key(keys.pop()) if len(keys) == 1 else None


def test_forced_order_agrees_with_enumeration():
    rng = random.Random(2)
    for _ in range(1500):
        n = rng.randint(1, 5)
        c = rng.choice((2, 3))
        hidden = Assignment([rng.randint(1, c) for _ in range(n)], c)
        comps = []
        for _ in range(rng.randint(0, 7)):
            if n < 2:
                break
            x, y = rng.sample(range(n), 2)
            comps.append((x, y, Outcome.from_sign((hidden[x] > hidden[y]) - (hidden[x] < hidden[y]))))
        assert forced_order(n, c, comps) == _forced_by_brute_force(n, c, comps)


def test_interval_reasoning_pins_classes():
    # 0<1 and 2<3 and 1=2: four coins spread over three classes, all forced
    comps = [(0, 1, Outcome.LIGHTER), (2, 3, Outcome.LIGHTER), (1, 2, Outcome.BALANCED)]
    assert forced_order(4, 3, comps).to_json() == [[0], [1, 2], [3]]
    # two separate chains of length three must line up class by class
    comps = [(0, 1, Outcome.LIGHTER), (1, 2, Outcome.LIGHTER), (3, 4, Outcome.LIGHTER), (4, 5, Outcome.LIGHTER)]
    assert forced_order(6, 3, comps).to_json() == [[0, 3], [1, 4], [2, 5]]


@pytest.mark.parametrize(
    "comps",
    [
        [(0, 1, Outcome.LIGHTER), (1, 0, Outcome.LIGHTER)],
        [(0, 1, Outcome.BALANCED), (0, 1, Outcome.HEAVIER)],
        [(0, 1, Outcome.LIGHTER), (1, 2, Outcome.LIGHTER), (2, 3, Outcome.LIGHTER)],
    ],
)
def test_inconsistent_comparisons(comps):
    with pytest.raises(InconsistentComparisons):
        analyze_comparisons(4, 3, comps)


def test_open_pairs_listed():
    info = analyze_comparisons(3, 3, [(0, 1, Outcome.BALANCED)])
    assert list(info.open_pairs()) == [(0, 1)]
    assert info.partition() is None
    assert list(itertools.islice(info.open_pairs(), 1))
