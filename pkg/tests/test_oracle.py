import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumtriples.oracle import (
    oracle_a002849,
    oracle_collections,
    oracle_count,
    oracle_count_exhaustive,
    oracle_partitions,
    sum_triples_upto,
)
from sumtriples.solvers import Tier, count
from sumtriples.state import from_full

from .conftest import subsets


def test_examples():
    assert oracle_count({1, 2, 3}) == 1
    assert oracle_count(range(1, 13)) == 8
    assert oracle_count({2, 3, 5, 7, 8, 10}) == 0


def test_exhaustive_blocking_agrees():
    # the exhaustive form checks sums only after all blocks are formed
    for vals in ([1, 2, 3], list(range(1, 13)), [2, 3, 5, 7, 8, 10], [3, 4, 7, 8, 10, 12], list(range(1, 10))):
        assert oracle_count_exhaustive(vals) == oracle_count(vals)


def test_fifteen_block_enumeration_size():
    # 6 elements split into unordered 3-blocks in 10 ways; 9 into 280; 12 into 15400
    from sumtriples.oracle import _blocks

    assert sum(1 for _ in _blocks(tuple(range(6)))) == 10
    assert sum(1 for _ in _blocks(tuple(range(9)))) == 280
    assert sum(1 for _ in _blocks(tuple(range(12)))) == 15400


def test_partitions_are_valid_and_distinct():
    parts = oracle_partitions(range(1, 13))
    assert len(parts) == 8
    keys = {frozenset(frozenset(b) for b in p) for p in parts}
    assert len(keys) == 8
    for p in parts:
        assert sorted(v for b in p for v in b) == list(range(1, 13))


def test_cost_guard():
    with pytest.raises(ValueError):
        oracle_count(range(1, 19))
    with pytest.raises(ValueError):
        oracle_count([1, 2])


@given(subsets(), st.randoms(use_true_random=False))
def test_permutation_invariant(vals, rnd):
    shuffled = list(vals)
    rnd.shuffle(shuffled)
    assert oracle_count(shuffled) == oracle_count(vals)


@pytest.mark.parametrize("n", [1, 4, 5])
def test_matches_naive_on_full_problems(n):
    assert oracle_count(range(1, 3 * n + 1)) == count(from_full(n), Tier.NAIVE).solutions


def test_a002849_examples():
    assert oracle_a002849(3) == 1
    assert oracle_a002849(4) == 2
    assert oracle_a002849(6) == 6
    assert sorted(oracle_collections(6)) == [(t,) for t in sum_triples_upto(6)]


@pytest.mark.parametrize("n", range(3, 11))
def test_a002849_counts_each_collection_once(n):
    cols = oracle_collections(n)
    keys = [frozenset(frozenset(t) for t in c) for c in cols]
    assert len(set(keys)) == len(keys)
    for c in cols:
        used = [v for t in c for v in t]
        assert len(used) == len(set(used))


@pytest.mark.parametrize("n", [6, 9])
def test_deficient_n_has_no_full_size_collection(n):
    assert oracle_collections(n, n // 3) == []
    assert oracle_collections(n, n // 3 - 1)


def test_a002849_guard():
    with pytest.raises(ValueError):
        oracle_a002849(16)
