"""Counting partitions into sum-triples: four algorithm tiers.

NAIVE
    Pair the smallest element ``b_1`` with every ``b_i`` whose sum
    ``b_1 + b_i`` is present, and recurse.
BASIC
    NAIVE plus the low/high test: a child whose lower two thirds outweigh
    its upper third (``S1 > S2``) is never entered.
THM2
    BASIC plus the equality rules. Once ``S1 == S2`` the state switches to
    REDUCED mode, where every triple takes two low elements and one high
    one. A GENERAL state (``S1 < S2``) is rejected if ``b_1 + b_2m >= b_3m``
    or ``b_1 + b_{2m+1} > b_3m``, since either one forces ``S1 == S2``.
    A REDUCED state with ``b_1 + b_2m == b_3m`` has exactly one branch,
    the forced triple ``{b_1, b_2m, b_3m}``. Any state with
    ``b_1 + b_2m > b_3m`` is dead. The partner scan stops at the first
    ``b_1 + b_i > b_3m``.
THM2_3
    THM2 plus a closed-form endgame at ``m == 2``. Valid only for states
    descending smallest-first from the full problem ``{1..3n}``.

Call accounting follows one rule for every tier: each entry into the
counting routine is one call, the root and the terminal empty state
included. The low/high test is applied to a child before entering it, so
rejected children cost no call. The equality rules are checked on entry.

The public ``count_*`` functions run the compiled kernel in ``_kernels``;
``count_reference`` and ``enumerate_partitions`` walk the same tree in
plain Python over :class:`~sumtriples.state.SearchState` and produce
identical statistics.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, fields
from typing import Iterator, Optional

import numpy as np

from . import _kernels
from .state import Mode, SearchState, Triple, candidate_partners, remove_triple

DEFAULT_ENUMERATE_CAP = 10**6


class Tier(enum.Enum):
    NAIVE = "naive"
    BASIC = "basic"
    THM2 = "thm2"
    THM2_3 = "thm2+3"

    @property
    def code(self) -> int:
        return _TIER_CODES[self]

    @classmethod
    def parse(cls, name: str) -> "Tier":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown algorithm {name!r}; choose from {[t.value for t in cls]}") from None


_TIER_CODES = {
    Tier.NAIVE: _kernels.NAIVE,
    Tier.BASIC: _kernels.BASIC,
    Tier.THM2: _kernels.THM2,
    Tier.THM2_3: _kernels.THM2_3,
}


@dataclass
class SearchStats:
    solutions: int = 0
    calls: int = 0
    prunes_sum: int = 0  # children with S1 > S2, never entered
    prunes_cutoff: int = 0  # partner scans stopped by b_1 + b_i > b_3m
    prunes_balance: int = 0  # states rejected because S1 == S2 is forced but fails
    forced_moves: int = 0
    endgame_hits: int = 0

    def __add__(self, other: "SearchStats") -> "SearchStats":
        return SearchStats(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def __iadd__(self, other: "SearchStats") -> "SearchStats":
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self

    def as_dict(self) -> dict[str, int]:
        return asdict(self)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "SearchStats":
        return cls(*(int(v) for v in arr[: len(fields(cls))]))


@dataclass(frozen=True)
class SolverConfig:
    tier: Tier = Tier.THM2_3
    endgame_enabled: Optional[bool] = None
    enumerate: bool = False
    enumerate_cap: int = DEFAULT_ENUMERATE_CAP

    def __post_init__(self) -> None:
        if self.endgame_enabled is None:
            object.__setattr__(self, "endgame_enabled", self.tier is Tier.THM2_3)
        elif self.endgame_enabled != (self.tier is Tier.THM2_3):
            raise ValueError("the endgame is part of tier thm2+3 and no other tier")


def feasible(n: int) -> bool:
    """Whether ``{1..3n}`` can be partitioned at all (``n % 4`` in ``{0, 1}``)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return n % 4 in (0, 1)


def _require_endgame_input(state: SearchState) -> None:
    if not state.full_problem:
        raise ValueError("tier thm2+3 needs a smallest-first descendant of the full problem {1..3n}")


def _entry_mode(state: SearchState, tier: Tier) -> Mode:
    if tier in (Tier.THM2, Tier.THM2_3) and state.low_sum == state.high_sum:
        return Mode.REDUCED
    return state.mode if tier in (Tier.THM2, Tier.THM2_3) else Mode.GENERAL


# --- compiled path -----------------------------------------------------------


def count(state: SearchState, config: SolverConfig | Tier = Tier.THM2_3) -> SearchStats:
    """Count partitions of ``state`` with the configured tier."""
    tier = config.tier if isinstance(config, SolverConfig) else config
    if tier is Tier.THM2_3:
        _require_endgame_input(state)
    els = np.asarray(state.elements, dtype=np.int64)
    mode = _entry_mode(state, tier)
    arr = _kernels.solve(els, state.value_bound, state.low_sum, state.high_sum, int(mode), tier.code)
    return SearchStats.from_array(arr)


def count_naive(state: SearchState) -> SearchStats:
    return count(state, Tier.NAIVE)


def count_basic(state: SearchState) -> SearchStats:
    return count(state, Tier.BASIC)


def count_thm2(state: SearchState) -> SearchStats:
    return count(state, Tier.THM2)


def count_thm2_3(state: SearchState) -> SearchStats:
    return count(state, Tier.THM2_3)


# --- reference path ----------------------------------------------------------


def endgame_partitions(els: tuple[int, ...]) -> list[tuple[Triple, Triple]]:
    """Partitions of a 6-element balanced remainder, from the four surviving shapes.

    Assumes ``b1 + b2 + b3 + b4 == b5 + b6``; the second triple then sums
    correctly by itself.
    """
    b1, b2, b3, b4, b5, b6 = els
    out = []
    if b1 + b2 == b5:
        out.append((Triple(b1, b2, b5), Triple(b3, b4, b6)))
    if b1 + b3 == b5:
        out.append((Triple(b1, b3, b5), Triple(b2, b4, b6)))
    if b1 + b4 == b5:
        out.append((Triple(b1, b4, b5), Triple(b2, b3, b6)))
    if b1 + b4 == b6:
        out.append((Triple(b1, b4, b6), Triple(b2, b3, b5)))
    return out


def _child_mode(child: SearchState, parent_mode: Mode) -> SearchState:
    if parent_mode is Mode.GENERAL and child.low_sum == child.high_sum:
        return child.with_mode(Mode.REDUCED)
    return child


def expand(
    state: SearchState, tier: Tier, stats: SearchStats
) -> tuple[list[tuple[Triple, ...]], list[tuple[Triple, SearchState]]]:
    """Process one call of the counting routine.

    Returns the partitions completed at this node (as tuples of triples,
    empty for the terminal state) and the children to descend into, each
    tagged with the triple that produced it. ``stats`` is updated in place.
    """
    stats.calls += 1
    m = state.m
    if m == 0:
        stats.solutions += 1
        return [()], []
    els = state.elements
    b1, top = els[0], els[-1]
    smart = tier in (Tier.THM2, Tier.THM2_3)

    if tier is Tier.BASIC and state.low_sum > state.high_sum:
        # only reachable at the root; children are tested before entry
        stats.prunes_sum += 1
        return [], []

    if smart:
        reduced = state.mode is Mode.REDUCED
        if state.low_sum > state.high_sum:
            stats.prunes_sum += 1
            return [], []
        if tier is Tier.THM2_3 and m == 2:
            if not reduced:
                stats.prunes_balance += 1
                return [], []
            stats.endgame_hits += 1
            done = endgame_partitions(els)
            stats.solutions += len(done)
            return list(done), []
        b2m = els[2 * m - 1]
        if b1 + b2m > top:
            stats.prunes_balance += 1
            return [], []
        if not reduced and (b1 + b2m == top or b1 + els[2 * m] > top):
            stats.prunes_balance += 1
            return [], []
        if b1 + b2m == top and m >= 2:
            stats.forced_moves += 1
            child = remove_triple(state, 2 * m, 3 * m)
            return [], [(Triple(b1, b2m, top), child)]
        pairs = list(candidate_partners(state))
        if b1 + els[(2 * m if reduced else 3 * m - 1) - 1] > top:
            stats.prunes_cutoff += 1
        children = []
        for i, k in pairs:
            child = remove_triple(state, i, k)
            if child.low_sum > child.high_sum:
                stats.prunes_sum += 1
                continue
            children.append((Triple(b1, els[i - 1], els[k - 1]), _child_mode(child, state.mode)))
        return [], children

    # NAIVE and BASIC scan every i, without the cutoff
    children = []
    for i in range(2, 3 * m):
        bi = els[i - 1]
        target = b1 + bi
        if not state.contains(target):
            continue
        k = state.index_of(target)
        child = remove_triple(state, i, k)
        if tier is Tier.BASIC and child.low_sum > child.high_sum:
            stats.prunes_sum += 1
            continue
        children.append((Triple(b1, bi, target), child))
    return [], children


def prepare_state(state: SearchState, tier: Tier) -> SearchState:
    """Validate ``state`` for ``tier`` and set the mode the search starts in."""
    if tier is Tier.THM2_3:
        _require_endgame_input(state)
    mode = _entry_mode(state, tier)
    if mode is not state.mode:
        state = SearchState(state.elements, state.value_bound, state.low_sum, state.high_sum, mode, state.full_problem)
    return state


def count_reference(state: SearchState, tier: Tier = Tier.THM2_3) -> SearchStats:
    """Pure-Python count over immutable states; same statistics as :func:`count`."""
    stats = SearchStats()
    stack = [prepare_state(state, tier)]
    while stack:
        _, children = expand(stack.pop(), tier, stats)
        stack.extend(child for _, child in reversed(children))
    return stats


def enumerate_partitions(state: SearchState, tier: Tier = Tier.THM2_3) -> Iterator[tuple[Triple, ...]]:
    """Yield every partition of ``state`` as a tuple of triples, in search order."""
    stats = SearchStats()

    def walk(s: SearchState, prefix: tuple[Triple, ...]) -> Iterator[tuple[Triple, ...]]:
        done, children = expand(s, tier, stats)
        for tail in done:
            yield prefix + tail
        for triple, child in children:
            yield from walk(child, prefix + (triple,))

    yield from walk(prepare_state(state, tier), ())
