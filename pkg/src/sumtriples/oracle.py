"""Pruning-free reference counters for validating the solvers.

These share no branching logic with the solvers: ``oracle_count`` pairs the
smallest unassigned element with every pair of larger elements and only
looks at sums once a block is complete. They are slow on purpose.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

MAX_ORACLE_BLOCKS = 5
MAX_ORACLE_A002849_N = 15


def _blocks(values: tuple[int, ...], keep=None) -> Iterator[list[tuple[int, int, int]]]:
    """Partitions of ``values`` into 3-blocks, each containing its smallest free element.

    ``keep`` is tested on each block once its third element is chosen;
    rejected blocks are not extended.
    """
    if not values:
        yield []
        return
    head, rest = values[0], values[1:]
    for a, b in combinations(range(len(rest)), 2):
        block = (head, rest[a], rest[b])
        if keep is not None and not keep(block):
            continue
        remaining = rest[:a] + rest[a + 1 : b] + rest[b + 1 :]
        for tail in _blocks(remaining, keep):
            yield [block, *tail]


def _is_sum_block(block: tuple[int, int, int]) -> bool:
    x, y, z = sorted(block)
    return x + y == z


def _checked(values: Iterable[int]) -> tuple[int, ...]:
    vals = tuple(sorted(set(values)))
    if len(vals) % 3:
        raise ValueError("size must be a multiple of 3")
    if len(vals) // 3 > MAX_ORACLE_BLOCKS:
        raise ValueError(f"oracle is limited to {MAX_ORACLE_BLOCKS} blocks ({3 * MAX_ORACLE_BLOCKS} values)")
    return vals


def oracle_partitions(values: Iterable[int]) -> list[list[tuple[int, int, int]]]:
    """All partitions of ``values`` into sum-triples."""
    return list(_blocks(_checked(values), _is_sum_block))


def oracle_count(values: Iterable[int]) -> int:
    return sum(1 for _ in _blocks(_checked(values), _is_sum_block))


def oracle_count_exhaustive(values: Iterable[int]) -> int:
    """Like :func:`oracle_count` but builds every blocking before filtering (slow)."""
    return sum(1 for p in _blocks(_checked(values)) if all(_is_sum_block(b) for b in p))


def sum_triples_upto(n: int) -> list[tuple[int, int, int]]:
    """Every ``(x, y, x + y)`` with ``x < y`` and ``x + y <= n``, sorted."""
    return [(x, y, x + y) for x in range(1, n + 1) for y in range(x + 1, n - x + 1)]


def max_collection_size(n: int) -> int:
    """Largest number of disjoint sum-triples inside ``{1..n}``."""
    t = n // 3
    if n % 12 in (6, 9):
        t -= 1
    return t


def oracle_collections(n: int, t: int | None = None) -> list[tuple[tuple[int, int, int], ...]]:
    """All collections of ``t`` disjoint sum-triples in ``{1..n}``.

    Triples are chosen in list order (sorted by smallest element first), so
    each unordered collection appears exactly once.
    """
    if n > MAX_ORACLE_A002849_N:
        raise ValueError(f"oracle is limited to n <= {MAX_ORACLE_A002849_N}")
    if t is None:
        t = max_collection_size(n)
    triples = sum_triples_upto(n)
    out: list[tuple[tuple[int, int, int], ...]] = []

    def walk(start: int, used: set[int], chosen: list[tuple[int, int, int]]) -> None:
        if len(chosen) == t:
            out.append(tuple(chosen))
            return
        for j in range(start, len(triples)):
            tr = triples[j]
            if used.isdisjoint(tr):
                chosen.append(tr)
                walk(j + 1, used | set(tr), chosen)
                chosen.pop()

    walk(0, set(), [])
    return out


def oracle_a002849(n: int) -> int:
    if n > MAX_ORACLE_A002849_N:
        raise ValueError(f"oracle is limited to n <= {MAX_ORACLE_A002849_N}")
    return len(oracle_collections(n))
