"""Search state for partitioning a set of integers into sum-triples.

A state is the sorted remaining set ``b_1 < ... < b_3m`` together with the
sum of its lower two thirds (``low_sum``) and upper third (``high_sum``).
Every partition into triples ``x + y = z`` needs ``low_sum <= high_sum``,
which is the main pruning test of the solvers.

Positional indices in this module are 1-based, so ``b_1`` is the smallest
element and ``b_3m`` the largest.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class Mode(enum.IntEnum):
    GENERAL = 0
    # low_sum == high_sum is established; every further triple takes two low
    # elements and one high element.
    REDUCED = 1


@dataclass(frozen=True, order=True)
class Triple:
    x: int
    y: int
    z: int

    def __post_init__(self) -> None:
        if not (0 < self.x < self.y < self.z):
            raise ValueError(f"triple must satisfy 0 < x < y < z, got {self}")
        if self.x + self.y != self.z:
            raise ValueError(f"triple must satisfy x + y = z, got {self}")

    def __iter__(self) -> Iterator[int]:
        return iter((self.x, self.y, self.z))


def split_sums(elements: tuple[int, ...]) -> tuple[int, int]:
    """Return ``(sum of first 2m, sum of last m)`` for a sorted 3m-tuple."""
    cut = 2 * (len(elements) // 3)
    return sum(elements[:cut]), sum(elements[cut:])


@dataclass(frozen=True)
class SearchState:
    elements: tuple[int, ...]
    value_bound: int
    low_sum: int
    high_sum: int
    mode: Mode = Mode.GENERAL
    full_problem: bool = False
    membership: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        table = bytearray(self.value_bound + 1)
        for v in self.elements:
            table[v] = 1
        object.__setattr__(self, "membership", bytes(table))

    @property
    def m(self) -> int:
        return len(self.elements) // 3

    @property
    def n(self) -> int:
        """Size parameter of the enclosing full problem ``{1..3n}``."""
        return self.value_bound // 3

    def __len__(self) -> int:
        return len(self.elements)

    def contains(self, value: int) -> bool:
        return 0 < value <= self.value_bound and self.membership[value] == 1

    def index_of(self, value: int) -> int:
        """1-based position of ``value``; raises ``KeyError`` when absent."""
        j = bisect.bisect_left(self.elements, value)
        if j == len(self.elements) or self.elements[j] != value:
            raise KeyError(value)
        return j + 1

    def b(self, i: int) -> int:
        """The element ``b_i`` (1-based)."""
        return self.elements[i - 1]

    def with_mode(self, mode: Mode) -> "SearchState":
        if mode is Mode.REDUCED and self.low_sum != self.high_sum:
            raise ValueError("REDUCED mode requires low_sum == high_sum")
        return SearchState(
            self.elements, self.value_bound, self.low_sum, self.high_sum, mode, self.full_problem
        )

    def check(self) -> None:
        """Assert every structural invariant; used by tests and ``verify``."""
        els = self.elements
        assert len(els) % 3 == 0, "size is not a multiple of 3"
        assert all(a < b for a, b in zip(els, els[1:])), "elements not strictly increasing"
        assert all(0 < v <= self.value_bound for v in els), "element out of range"
        assert (self.low_sum, self.high_sum) == split_sums(els), "cached sums are stale"
        assert sum(self.membership) == len(els), "membership table disagrees"
        if self.mode is Mode.REDUCED:
            assert self.low_sum == self.high_sum, "REDUCED without equal sums"
        if self.full_problem and els:
            assert els[0] >= self.n - self.m + 1, "smallest-first bound violated"


def from_full(n: int) -> SearchState:
    """The complete problem ``{1, ..., 3n}``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    els = tuple(range(1, 3 * n + 1))
    s1, s2 = split_sums(els)
    return SearchState(els, 3 * n, s1, s2, Mode.GENERAL, True)


def from_subset(values: Iterable[int], value_bound: int) -> SearchState:
    vals = list(values)
    if len(set(vals)) != len(vals):
        raise ValueError("values contain duplicates")
    if len(vals) == 0 or len(vals) % 3:
        raise ValueError(f"need a positive multiple of 3 values, got {len(vals)}")
    if any(v < 1 or v > value_bound for v in vals):
        raise ValueError(f"values must lie in 1..{value_bound}")
    els = tuple(sorted(vals))
    s1, s2 = split_sums(els)
    return SearchState(els, value_bound, s1, s2, Mode.GENERAL, False)


def update_sums(
    m: int, i: int, k: int, s1: int, s2: int, b1: int, bi: int, bk: int, b2m: int, b2m1: int
) -> tuple[int, int]:
    """Sums after removing ``{b_1, b_i, b_k}`` from a 3m-element state.

    Which branch applies depends only on where ``i`` and ``k`` fall
    relative to the low/high split at ``2m``.
    """
    if i >= 2 * m + 1:
        return s1 - b1 - b2m, s2 - bi - bk + b2m
    if k >= 2 * m + 1:
        return s1 - b1 - bi, s2 - bk
    return s1 - b1 - bi - bk + b2m1, s2 - b2m1


def remove_triple(state: SearchState, i: int, k: int) -> SearchState:
    """Remove ``{b_1, b_i, b_k}`` and update the cached sums incrementally."""
    m = state.m
    if m < 1:
        raise ValueError("cannot remove a triple from the empty state")
    if not (2 <= i < k <= 3 * m):
        raise IndexError(f"need 2 <= i < k <= {3 * m}, got i={i}, k={k}")
    els = state.elements
    b1, bi, bk = els[0], els[i - 1], els[k - 1]
    if b1 + bi != bk:
        raise ValueError(f"b_1 + b_i != b_k ({b1} + {bi} != {bk})")
    s1, s2 = update_sums(m, i, k, state.low_sum, state.high_sum, b1, bi, bk, els[2 * m - 1], els[2 * m])
    rest = els[1 : i - 1] + els[i:k - 1] + els[k:]
    return SearchState(rest, state.value_bound, s1, s2, state.mode, state.full_problem)


def candidate_partners(state: SearchState) -> Iterator[tuple[int, int]]:
    """Yield every ``(i, k)`` with ``b_1 + b_i = b_k`` in increasing ``i``.

    The pointer ``k`` only ever moves forward. The scan stops for good once
    ``b_1 + b_i`` exceeds the largest element. In REDUCED mode only pairs
    with ``i <= 2m < k`` are produced.
    """
    els = state.elements
    size = len(els)
    if size < 3:
        return
    m = size // 3
    b1, top = els[0], els[-1]
    reduced = state.mode is Mode.REDUCED
    i_stop = 2 * m if reduced else size - 1
    k = 2
    for i in range(2, i_stop + 1):
        target = b1 + els[i - 1]
        if target > top:
            return
        k = max(k, i + 1)
        while els[k - 1] < target:
            k += 1
        if els[k - 1] == target and (not reduced or k >= 2 * m + 1):
            yield i, k
