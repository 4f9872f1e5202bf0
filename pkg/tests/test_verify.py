from __future__ import annotations

import json
import random

import pytest

from coinweigh.model import Assignment, OrderedPartition, Outcome, Transcript, Weighing
from coinweigh.scale import PanPolicy, Session
from coinweigh.solver import Universe
from coinweigh.strategies import REGISTRY, StrategyInfo, drive
from coinweigh.verify import (
    InconsistentTranscript,
    exhaustive_check,
    forced_by_enumeration,
    label_audit,
    label_problems,
    transcript_sorted_unique,
    universe_for,
)


def transcript(*steps):
    t = Transcript()
    for left, right, o in steps:
        t.record(Weighing(left, right), Outcome(o))
    return t


def test_report_sort3_tiny_four():
    r = exhaustive_check("sort3-tiny", Universe.all(4))
    assert (r.runs, len(r.failures), r.max_count, r.bound) == (81, 0, 4, 4)
    assert r.bound_met and r.bound_tight
    assert r.tsv() == "strategy=sort3-tiny\tuniverse=all\tn=4\truns=81\tfailures=0\tmax=4\tbound=4\ttight=yes"
    data = json.loads(r.dumps())
    assert sum(data["histogram"].values()) == 81


def test_report_sort3_huge_seven():
    r = exhaustive_check("sort3-huge", Universe.all(7))
    assert r.runs == 2187 and r.ok and r.max_count <= 8


def test_report_hunt():
    r = exhaustive_check("find-mid", Universe.hunt_4_1_4())
    assert r.runs == 630 and r.ok and r.max_count <= 7


def test_guard():
    with pytest.raises(ValueError):
        exhaustive_check("sort3-tiny", Universe.all(11))
    with pytest.raises(KeyError):
        exhaustive_check("nope", Universe.all(2))


def broken_info():
    def make(n, probe=None, **_):
        yield Weighing.pair(0, 1)
        return OrderedPartition.from_groups([range(n)])

    return StrategyInfo("broken", make, PanPolicy.TINY, "sort", bound=lambda n, **_: 1)


def test_failures_carry_transcripts():
    r = exhaustive_check(broken_info(), Universe.all(2))
    assert len(r.failures) == 6
    f = r.failures[0]
    assert f.assignment == "12"
    assert f.transcript == [([0], [1], "<")]


def test_crashes_become_failures():
    r = exhaustive_check("sort3-huge", Universe.all(6), policy=PanPolicy.TINY)
    assert r.failures and "PanPolicyViolation" in r.failures[0].reason


def test_universe_follows_class_count():
    assert universe_for("sort2-tiny", 3).c == 2
    assert universe_for("sortk-tiny", 3, k=4).c == 4
    assert universe_for("find-mid", 5).name == "one-middle"


@pytest.mark.parametrize(
    "t, n, expected",
    [
        (transcript(((0,), (1,), "<")), 2, [[0], [1]]),
        (transcript(((0,), (1,), "=")), 3, None),
        (transcript(((1,), (0,), "<"), ((0,), (2,), "<")), 3, [[1], [0], [2]]),
    ],
)
def test_sorted_unique_examples(t, n, expected):
    got = transcript_sorted_unique(t, n, PanPolicy.TINY)
    assert (got.to_json() if got else None) == expected
    enum = forced_by_enumeration(t, n)
    assert (enum.to_json() if enum else None) == expected


def test_sorted_unique_inconsistent():
    t = transcript(((0,), (1,), "<"), ((1,), (0,), "<"))
    with pytest.raises(InconsistentTranscript):
        transcript_sorted_unique(t, 2)
    with pytest.raises(InconsistentTranscript):
        forced_by_enumeration(t, 2)
    huge = transcript(((0, 1), (2, 3), "="), ((0,), (2,), "<"), ((1,), (3,), "<"))
    with pytest.raises(InconsistentTranscript):
        transcript_sorted_unique(huge, 4, PanPolicy.HUGE)


def test_comparison_analysis_matches_enumeration():
    rng = random.Random(8)
    for trial in range(400):
        n = rng.randint(2, 8)
        hidden = Assignment([rng.randint(1, 3) for _ in range(n)])
        session = Session(hidden)
        for _ in range(rng.randint(0, 2 * n)):
            a, b = rng.sample(range(n), 2)
            session.evaluate(Weighing.pair(a, b))
        t = session.transcript
        assert transcript_sorted_unique(t, n) == forced_by_enumeration(t, n), trial


def test_huge_answers_are_forced():
    info = REGISTRY["sort3-huge"]
    for a in Universe.all(5).assignments:
        session = Session(a, PanPolicy.HUGE)
        answer = drive(info.make(5), session.evaluate)
        assert transcript_sorted_unique(session.transcript, 5, PanPolicy.HUGE) == answer


def test_enumeration_limit():
    with pytest.raises(ValueError):
        forced_by_enumeration(Transcript(), 13)


@pytest.mark.parametrize("name", ["sort3-tiny", "sort3-huge"])
def test_label_audit_six(name):
    assert label_audit(name, Universe.all(6))


@pytest.mark.parametrize("name", ["sort-mid1", "find-mid", "ternary"])
def test_label_audit_middle(name):
    assert label_audit(name, Universe.one_middle(6))


def test_label_audit_negative_control():
    honest = REGISTRY["sort3-tiny"]

    class Swapping:
        def __init__(self, inner):
            self.inner = inner

        def label(self, coin, mark):
            self.inner.label(coin, {"L": "H", "H": "L"}[mark])

        def match(self, coin, other):
            self.inner.match(coin, other)

    corrupted = StrategyInfo(
        "corrupted",
        lambda n, probe, **kw: honest.make(n, probe=Swapping(probe), **kw),
        PanPolicy.TINY,
        "sort",
        bound=honest.bound,
    )
    assert not label_audit(corrupted, Universe.all(4))
    assert label_problems(corrupted, Universe.all(2))[0] == ("12", "coin 0 of class 1 labelled H")
