import pytest
from hypothesis import given

from sumtriples.oracle import oracle_count, oracle_partitions
from sumtriples.solvers import (
    SearchStats,
    SolverConfig,
    Tier,
    count,
    count_basic,
    count_naive,
    count_reference,
    count_thm2,
    count_thm2_3,
    enumerate_partitions,
    feasible,
)
from sumtriples.state import Mode, SearchState, from_full, from_subset, remove_triple
from sumtriples.verify import scan_count, suite_endgame, suite_forced_moves, walk_states

from .conftest import subsets

SUBSET_TIERS = (Tier.NAIVE, Tier.BASIC, Tier.THM2)


def test_trivial_sets():
    assert count_naive(from_subset({1, 2, 3}, 3)).solutions == 1
    assert count_naive(from_subset({1, 2, 4}, 4)).solutions == 0
    for tier in SUBSET_TIERS:
        assert count(from_subset({1, 2, 3}, 3), tier).solutions == 1
        assert count(from_subset({1, 2, 4}, 4), tier).solutions == 0


def test_naive_n8_table_values():
    st = count_naive(from_full(8))
    assert (st.solutions, st.calls) == (3040, 435083)


def test_basic_table_values():
    assert (count_basic(from_full(8)).solutions, count_basic(from_full(8)).calls) == (3040, 49059)
    st = count_basic(from_full(9))
    assert (st.solutions, st.calls) == (20505, 401092)


def test_basic_subset_every_child_pruned():
    s = from_subset({2, 3, 5, 7, 8, 10}, 12)
    assert oracle_count(s.elements) == 0
    st = count_basic(s)
    assert st.solutions == 0
    # children {7,8,10}, {3,8,10}, {3,5,7} all have a heavier low part
    assert (st.calls, st.prunes_sum) == (1, 3)


def test_thm2_reduced_example():
    s = from_subset({3, 4, 7, 8, 10, 12}, 12)
    assert s.low_sum == s.high_sum == 22
    assert oracle_partitions(s.elements) == [[(3, 7, 10), (4, 8, 12)]]
    assert count_thm2(s).solutions == 1
    assert [tuple(map(tuple, p)) for p in enumerate_partitions(s, Tier.THM2)] == [((3, 7, 10), (4, 8, 12))]


def test_thm2_n8():
    assert count_thm2(from_full(8)).solutions == 3040


def test_endgame_remainder_example():
    # {1..12} after (1,5,6) and (2,9,11)
    s = from_full(4)
    s = remove_triple(s, s.index_of(5), s.index_of(6))
    s = remove_triple(s, s.index_of(9), s.index_of(11))
    assert s.elements == (3, 4, 7, 8, 10, 12) and s.full_problem
    st = count_thm2_3(s)
    assert st.solutions == 1 == oracle_count(s.elements)
    assert st.endgame_hits == 1 and st.calls == 1


def test_endgame_unbalanced_remainder_is_zero():
    s = from_full(4)
    s = remove_triple(s, s.index_of(2), s.index_of(3))  # 1+2=3
    s = remove_triple(s, s.index_of(5), s.index_of(9))  # 4+5=9
    assert s.elements == (6, 7, 8, 10, 11, 12) and (s.low_sum, s.high_sum) == (31, 23)
    st = count_thm2_3(s)
    assert st.solutions == 0 == oracle_count(s.elements)
    assert st.endgame_hits == 0 and st.prunes_sum == 1


def test_thm2_3_n8():
    assert count_thm2_3(from_full(8)).solutions == 3040


def test_thm2_3_rejects_subsets():
    with pytest.raises(ValueError):
        count_thm2_3(from_subset({1, 2, 3}, 3))
    with pytest.raises(ValueError):
        SolverConfig(tier=Tier.THM2, endgame_enabled=True)
    assert SolverConfig().endgame_enabled


@pytest.mark.parametrize("n, ok", [(1, True), (2, False), (3, False), (4, True), (5, True), (6, False), (17, True)])
def test_feasible(n, ok):
    assert feasible(n) is ok


@pytest.mark.parametrize("n", [2, 3, 6, 7])
def test_infeasible_counts_are_zero(n):
    for tier in Tier:
        assert count(from_full(n), tier).solutions == 0


@pytest.mark.parametrize("n, expected", [(1, 1), (4, 8), (5, 21)])
def test_tier_agreement_full(n, expected):
    assert oracle_count(range(1, 3 * n + 1)) == expected
    for tier in Tier:
        assert count(from_full(n), tier).solutions == expected


@pytest.mark.parametrize("n", [1, 4, 5, 8])
@pytest.mark.parametrize("tier", list(Tier))
def test_compiled_matches_reference_stats(n, tier):
    assert count(from_full(n), tier) == count_reference(from_full(n), tier)


@given(subsets())
def test_tiers_agree_with_oracle_on_subsets(vals):
    s = from_subset(vals, 15)
    expected = oracle_count(vals)
    for tier in SUBSET_TIERS:
        assert count(s, tier).solutions == expected
        assert count_reference(s, tier) == count(s, tier)


@given(subsets(universe=15, sizes=(3, 6, 9, 12)))
def test_enumeration_matches_oracle(vals):
    s = from_subset(vals, 15)
    want = {frozenset(frozenset(b) for b in p) for p in oracle_partitions(vals)}
    for tier in SUBSET_TIERS:
        got = [frozenset(frozenset(t) for t in p) for p in enumerate_partitions(s, tier)]
        assert len(got) == len(set(got))
        assert set(got) == want


def test_enumeration_with_endgame_n5():
    got = {frozenset(frozenset(t) for t in p) for p in enumerate_partitions(from_full(5), Tier.THM2_3)}
    want = {frozenset(frozenset(b) for b in p) for p in oracle_partitions(range(1, 16))}
    assert got == want and len(got) == 21


@pytest.mark.parametrize("n", [8, 9])
def test_call_monotonicity(n):
    calls = [count(from_full(n), tier).calls for tier in Tier]
    assert calls == sorted(calls, reverse=True)


def test_stats_merge():
    a = SearchStats(1, 2, 3, 4, 5, 6, 7)
    b = SearchStats(10, 20, 30, 40, 50, 60, 70)
    assert a + b == SearchStats(11, 22, 33, 44, 55, 66, 77)
    a += b
    assert a.solutions == 11 and a.endgame_hits == 77


def test_reduced_restriction_sound_on_balanced_states():
    checked = 0
    for n in (4, 5, 8):
        for s in walk_states(from_full(n)):
            if s.m >= 1 and s.low_sum == s.high_sum and s.m <= 4:
                checked += 1
                assert scan_count(s, True) == scan_count(s, False)
    assert checked > 100


def test_reduced_state_counted_as_general_state():
    s = from_subset({1, 4, 6, 7, 8, 9, 10, 11, 15}, 15)
    if s.low_sum == s.high_sum:
        red = SearchState(s.elements, 15, s.low_sum, s.high_sum, Mode.REDUCED)
        assert count_thm2(red).solutions == count_basic(s).solutions


def test_forced_moves_sound():
    res = suite_forced_moves(8, 100, 3)
    assert res.ok and res.checked > 1000, res.failures[:3]


def test_endgame_complete_on_all_remainders():
    res = suite_endgame([4, 5, 8])
    assert res.ok and res.checked > 1000, res.failures[:3]
