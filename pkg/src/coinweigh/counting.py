"""Exact counts behind the one-against-one rule.

``distinguishable_count`` counts weak orders of ``n`` coins using at most
three classes; ``balance_count`` counts class assignments of ``2k`` coins
that balance ``k`` against ``k``.  Everything is integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .model import weak_order_key


def distinguishable_count(n: int) -> int:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return 3**n - 2 * 2**n + 2


def distinguishable_count_bruteforce(n: int) -> int:
    if not 1 <= n <= 10:
        raise ValueError(f"brute force limited to 1 <= n <= 10, got {n}")
    return len({weak_order_key(cs) for cs in itertools.product((1, 2, 3), repeat=n)})


def balance_count(k: int) -> int:
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    return sum(comb(k, i) ** 2 * comb(2 * i, i) for i in range(k + 1))


def balance_count_bruteforce(k: int) -> int:
    if not 1 <= k <= 5:
        raise ValueError(f"brute force limited to 1 <= k <= 5, got {k}")
    total = 0
    for cs in itertools.product((0, 1, 2), repeat=2 * k):
        d = [0, 0, 0]
        for x in cs[:k]:
            d[x] += 1
        for x in cs[k:]:
            d[x] -= 1
        if d == [0, 0, 0]:
            total += 1
    return total


def balance_recurrence_check(max_n: int) -> bool:
    """(n+1)^2 a(n+1) = (10n^2+10n+3) a(n) - 9n^2 a(n-1) for 1 <= n < max_n."""
    if max_n < 2:
        raise ValueError(f"need max_n >= 2, got {max_n}")
    a = [balance_count(i) for i in range(max_n + 1)]
    return all(
        (n + 1) ** 2 * a[n + 1] == (10 * n * n + 10 * n + 3) * a[n] - 9 * n * n * a[n - 1]
        for n in range(1, max_n)
    )


def balance_ratio_decreasing(max_n: int) -> bool:
    # a(n+1)/9^(n+1) < a(n)/9^n, cleared of denominators
    if max_n < 2:
        raise ValueError(f"need max_n >= 2, got {max_n}")
    a = [balance_count(i) for i in range(max_n + 1)]
    return all(a[n + 1] < 9 * a[n] for n in range(1, max_n))


def lower_bound_check(max_n: int) -> bool:
    if max_n < 3:
        raise ValueError(f"need max_n >= 3, got {max_n}")
    return all(distinguishable_count(n) > 3 ** (n - 1) for n in range(3, max_n + 1))


@dataclass
class CountTable:
    rows: list[tuple[int, int, int | None]] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(brute is None or brute == closed for _, closed, brute in self.rows)

    def tsv_lines(self) -> list[str]:
        lines = ["n\tclosed_form\tbrute_force\tmatch"]
        for n, closed, brute in self.rows:
            if brute is None:
                lines.append(f"{n}\t{closed}\t-\t-")
            else:
                lines.append(f"{n}\t{closed}\t{brute}\t{'yes' if brute == closed else 'no'}")
        return lines


def count_table(kind: str, max_n: int) -> CountTable:
    """``kind`` is ``dist`` or ``balance``; brute force fills rows inside its guard."""
    table = CountTable()
    if kind == "dist":
        for n in range(1, max_n + 1):
            table.rows.append(
                (n, distinguishable_count(n), distinguishable_count_bruteforce(n) if n <= 7 else None)
            )
    elif kind == "balance":
        for k in range(1, max_n + 1):
            table.rows.append((k, balance_count(k), balance_count_bruteforce(k) if k <= 5 else None))
    else:
        raise ValueError(f"unknown table {kind!r}")
    return table
