from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from coinweigh.cli import main
from coinweigh.model import OrderedPartition, Weighing
from coinweigh.scale import PanPolicy
from coinweigh.strategies import REGISTRY, StrategyInfo


def call(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_example():
    code, text = call("verify", "--strategy", "sort3-tiny", "--n", "4", "--universe", "all")
    assert code == 0
    assert text.rstrip().endswith("max=4\tbound=4\ttight=yes")


def test_count_balance_example():
    code, text = call("count", "--table", "balance", "--max", "4")
    assert code == 0
    rows = [line.split("\t") for line in text.splitlines()[1:]]
    assert [r[1] for r in rows] == ["3", "15", "93", "639"]
    assert all(r[3] == "yes" for r in rows)


def test_hunt_seven():
    code, text = call("hunt", "--weighings", "7")
    assert code == 0
    assert text == "correct=630/630\tmax=7\tlimit=7\n"


def test_hunt_six_writes_a_replayable_tree(tmp_path):
    path = tmp_path / "tree.json"
    code, text = call("hunt", "--weighings", "6", "--emit-tree", str(path))
    assert code == 0
    assert "depth=6" in text and "replay=ok" in text
    tree = json.loads(path.read_text())
    assert set(tree) == {"weigh", "<", "=", ">"}


def test_run_is_deterministic():
    args = ("run", "--strategy", "sort3-huge", "--n", "7", "--seed", "12", "--universe", "all")
    first, second = call(*args), call(*args)
    assert first == second and first[0] == 0
    lines = first[1].splitlines()
    assert json.loads(lines[-1])["answer"]["groups"]
    assert json.loads(lines[0])["step"] == 1


def test_run_with_digits():
    code, text = call("run", "--strategy", "sort2-tiny", "--n", "3", "--assignment", "212")
    assert code == 0
    assert text.splitlines()[-1] == '{"answer": {"groups": [[1], [0, 2]]}}'


def test_run_pretty():
    code, text = call("run", "--strategy", "find-mid", "--n", "5", "--assignment", "13213", "--pretty")
    assert code == 0 and "middle coin: 2 (correct)" in text


def test_adversary_trace():
    code, text = call("adversary", "--n", "5")
    assert code == 0
    rows = [json.loads(x) for x in text.splitlines()]
    assert len(rows) - 1 == 6
    assert all("s" in r for r in rows[:-1])


def test_solve_variants(tmp_path):
    code, text = call("solve", "--variant", "sort3-tiny", "--n", "4")
    assert code == 0 and "\tdepth=4\t" in text
    path = tmp_path / "t.json"
    code, text = call("solve", "--variant", "find-mid", "--n", "4", "--emit-tree", str(path))
    assert code == 0 and "replay=ok" in text and path.exists()
    code, text = call("solve", "--variant", "sort3-tiny", "--n", "4", "--budget", "3")
    assert code == 0 and "depth=exceeded" in text


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["fly"],
        ["verify", "--strategy", "sort3-tiny"],
        ["run", "--strategy", "sort3-tiny", "--n", "3"],
        ["run", "--strategy", "sort3-tiny", "--n", "3", "--assignment", "14"],
        ["run", "--strategy", "sort3-tiny", "--n", "3", "--assignment", "1234"],
        ["verify", "--strategy", "sort3-tiny", "--n", "0"],
        ["verify", "--strategy", "sort3-tiny", "--n", "3", "--k", "4"],
        ["adversary", "--strategy", "sort3-huge", "--n", "4"],
        ["solve", "--variant", "sort3-tiny"],
        ["solve", "--variant", "sort3-tiny", "--n", "3", "--budget", "40"],
        ["count", "--table", "dist", "--max", "0"],
        ["hunt", "--weighings", "5"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv, out=io.StringIO()) == 2


@pytest.fixture
def broken():
    def make(n, probe=None, **_):
        yield Weighing.pair(0, 1)
        return OrderedPartition.from_groups([range(n)])

    REGISTRY["broken"] = StrategyInfo("broken", make, PanPolicy.TINY, "sort", bound=lambda n, **_: 1)
    yield "broken"
    del REGISTRY["broken"]


def test_verify_failure_exit_one(broken):
    code, text = call("verify", "--strategy", broken, "--n", "3")
    assert code == 1 and "failures=" in text


def test_adversary_unsound_exit_one(broken, capsys):
    code, _ = call("adversary", "--strategy", broken, "--n", "3")
    assert code == 1
    assert "unsound" in capsys.readouterr().err


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "coinweigh.cli", "count", "--table", "dist", "--max", "3"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout.splitlines()[-1] == "3\t13\t13\tyes"
