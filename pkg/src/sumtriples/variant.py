"""Maximum collections of disjoint sum-triples inside ``{1..n}`` (OEIS A002849).

A maximum collection of ``t`` triples leaves ``r = n - 3t`` numbers unused.
Summing the full-partition counts of ``{1..n} \\ E`` over every exclusion
set ``E`` of size ``r`` counts each collection exactly once, because the
collection determines ``E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Optional

from .oracle import max_collection_size
from .solvers import SearchStats, SolverConfig, Tier, count
from .state import from_subset


@dataclass(frozen=True)
class VariantProblem:
    n: int
    t: int
    r: int
    parity: int  # required parity of sum(E)


def variant_problem(n: int) -> VariantProblem:
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    t = max_collection_size(n)
    total = n * (n + 1) // 2
    return VariantProblem(n=n, t=t, r=n - 3 * t, parity=total % 2)


def exclusion_candidates(p: VariantProblem, parity_filter: bool = True) -> Iterator[tuple[int, ...]]:
    """Exclusion sets in lexicographic order.

    The survivors must have an even sum (their sum is twice the sum of the
    ``z`` values), so ``sum(E)`` must match the parity of the full sum.
    Dropping the filter only adds sets whose count is zero.
    """
    for e in combinations(range(1, p.n + 1), p.r):
        if not parity_filter or sum(e) % 2 == p.parity:
            yield e


def remaining_set(p: VariantProblem, excluded: tuple[int, ...]) -> list[int]:
    ex = set(excluded)
    return [v for v in range(1, p.n + 1) if v not in ex]


def _check_tier(config: SolverConfig) -> None:
    if config.tier is Tier.THM2_3 or config.endgame_enabled:
        raise ValueError("the endgame rule needs the full problem {1..3n}; use tier thm2 or lower")


def subproblem_stats(p: VariantProblem, excluded: tuple[int, ...], config: SolverConfig) -> SearchStats:
    _check_tier(config)
    return count(from_subset(remaining_set(p, excluded), p.n), config)


def count_a002849(
    n: int,
    config: Optional[SolverConfig] = None,
    *,
    resume_after: Optional[tuple[int, ...]] = None,
    parity_filter: bool = True,
    progress: Optional[Callable[[tuple[int, ...], SearchStats], None]] = None,
) -> int:
    """Number of maximum-size collections of disjoint sum-triples in ``{1..n}``.

    With ``resume_after`` set, exclusion sets up to and including it (in
    lexicographic order) are skipped and the result is the partial total
    over the remaining sets.
    """
    config = config or SolverConfig(tier=Tier.THM2)
    _check_tier(config)
    p = variant_problem(n)
    total = 0
    for e in exclusion_candidates(p, parity_filter):
        if resume_after is not None and e <= resume_after:
            continue
        st = subproblem_stats(p, e, config)
        total += st.solutions
        if progress is not None:
            progress(e, st)
    return total
