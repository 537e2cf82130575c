"""Label-types of labeled walks and their concatenation.

A walk's type records its internal local extrema (plateau-aware, endpoint
runs excluded) read from first to last edge: Empty, Min, Max, MinMax,
MaxMin, or Good once some kind of extremum occurs twice.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence

EMPTY, MIN, MAX, MINMAX, MAXMIN, GOOD = "Empty", "Min", "Max", "MinMax", "MaxMin", "Good"
TAGS = (EMPTY, MIN, MAX, MINMAX, MAXMIN, GOOD)

_BY_WORD = {"": EMPTY, "m": MIN, "M": MAX, "mM": MINMAX, "Mm": MAXMIN}
_REVERSED = {EMPTY: EMPTY, MIN: MIN, MAX: MAX, MINMAX: MAXMIN, MAXMIN: MINMAX, GOOD: GOOD}


class LabelType(NamedTuple):
    l1: int
    tau: str
    l2: int

    def reversed(self) -> "LabelType":
        return LabelType(self.l2, _REVERSED[self.tau], self.l1)


def _extrema_word(labels: Sequence[int]) -> str:
    runs = []
    for x in labels:
        if not runs or runs[-1] != x:
            runs.append(x)
    word = []
    for i in range(1, len(runs) - 1):
        if runs[i] < runs[i - 1] and runs[i] < runs[i + 1]:
            word.append("m")
        elif runs[i] > runs[i - 1] and runs[i] > runs[i + 1]:
            word.append("M")
    return "".join(word)


def type_of_labeled_path(labels: Sequence[int]) -> str:
    if not labels:
        raise ValueError("a walk has at least one edge")
    return _BY_WORD.get(_extrema_word(labels), GOOD)


def label_type(labels: Sequence[int]) -> LabelType:
    return LabelType(labels[0], type_of_labeled_path(labels), labels[-1])


def tag_le(a: str, b: str) -> bool:
    """a <= b: the extrema word of a is a substring of that of b, or b is Good."""
    return (a == b or b == GOOD or a == EMPTY
            or (a in (MIN, MAX) and b in (MINMAX, MAXMIN)))


def type_le(a: LabelType, b: LabelType) -> bool:
    return a.l1 == b.l1 and a.l2 == b.l2 and tag_le(a.tau, b.tau)


def _skeleton(t: LabelType, low: int, high: int) -> list[int]:
    # Shortest label sequence with the given ends and internal extrema.
    inner = {EMPTY: [], MIN: [low], MAX: [high], MINMAX: [low, high], MAXMIN: [high, low]}
    return [t.l1] + inner[t.tau] + [t.l2]


@lru_cache(maxsize=None)
def concat_label_types(a: LabelType, b: LabelType) -> LabelType:
    """Type of the walk formed by a followed by b.

    Only the ends and the internal extrema word matter, so gluing two
    skeleton sequences and classifying the result gives the answer.
    """
    if a.tau == GOOD or b.tau == GOOD:
        return LabelType(a.l1, GOOD, b.l2)
    ends = (a.l1, a.l2, b.l1, b.l2)
    low, high = min(ends) - 1, max(ends) + 1
    seq = _skeleton(a, low, high) + _skeleton(b, low, high)
    return LabelType(a.l1, type_of_labeled_path(seq), b.l2)


def closed_walk_is_bad(t: LabelType) -> bool:
    """Whether a closed walk of type t, read from one edge at its base vertex
    round to the other, has at most one local minimum as a cycle."""
    if t.tau in (EMPTY, MIN, MAX):
        return True
    if t.tau == MINMAX:
        return t.l1 <= t.l2
    if t.tau == MAXMIN:
        return t.l1 >= t.l2
    return False


def minimal_tags(tags) -> frozenset:
    tags = set(tags)
    return frozenset(t for t in tags if not any(s != t and tag_le(s, t) for s in tags))
