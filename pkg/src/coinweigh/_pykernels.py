"""Pure-Python kernels.  Same interface as the compiled ``_ckernels`` module.

Knowledge states are Python ints used as bitsets over a universe of
assignments (bit i <-> assignment i).
"""

from __future__ import annotations

# outcome codes shared with the compiled kernels
LIGHTER, BALANCED, HEAVIER, UNDETERMINED = 0, 1, 2, 3


def outcome_codes(classes: bytes, n: int, c: int, coeffs: bytes, num_weighings: int) -> bytes:
    """Generic-model outcome of every weighing on every assignment.

    ``classes`` holds ``N * n`` zero-based class indices, row per assignment.
    ``coeffs`` holds ``W * n`` pan markers: 0 off the scale, 1 left, 2 right.
    Returns ``W * N`` codes, row per weighing.
    """
    size = len(classes) // n if n else 0
    out = bytearray(num_weighings * size)
    for w in range(num_weighings):
        row = coeffs[w * n : (w + 1) * n]
        left = [i for i in range(n) if row[i] == 1]
        right = [i for i in range(n) if row[i] == 2]
        base = w * size
        for a in range(size):
            cls = classes[a * n : (a + 1) * n]
            d = [0] * c
            for i in left:
                d[cls[i]] += 1
            for i in right:
                d[cls[i]] -= 1
            s = 0
            pos = neg = False
            for j in range(c - 1, -1, -1):
                s += d[j]
                if s > 0:
                    pos = True
                elif s < 0:
                    neg = True
            if pos and neg:
                code = UNDETERMINED
            elif pos:
                code = HEAVIER
            elif neg:
                code = LIGHTER
            else:
                code = BALANCED
            out[base + a] = code
    return bytes(out)


class MaskTable:
    """Per-weighing bitsets of the assignments giving each outcome code."""

    def __init__(self, codes: bytes, num_weighings: int, size: int):
        self.num_weighings = num_weighings
        self.size = size
        self._masks: list[tuple[int, int, int, int]] = []
        for w in range(num_weighings):
            row = codes[w * size : (w + 1) * size]
            masks = []
            for code in range(4):
                bits = "".join("1" if x == code else "0" for x in reversed(row))
                masks.append(int(bits, 2) if bits else 0)
            self._masks.append(tuple(masks))

    def mask(self, w: int, code: int) -> int:
        return self._masks[w][code]

    def split_sizes(self, state: int) -> list[int]:
        """Four counts per weighing: members giving <, =, >, undetermined."""
        out: list[int] = []
        for masks in self._masks:
            out.extend((state & m).bit_count() for m in masks)
        return out


class AnswerTable:
    """Answer id of every assignment; counts distinct answers inside a state."""

    def __init__(self, answers: list[int], num_answers: int):
        self.num_answers = num_answers
        masks = [0] * num_answers
        for i, ans in enumerate(answers):
            masks[ans] |= 1 << i
        self._masks = masks
        self._answers = list(answers)

    def count(self, state: int) -> int:
        return sum(1 for m in self._masks if state & m)

    def first(self, state: int) -> int:
        return self._answers[(state & -state).bit_length() - 1]
