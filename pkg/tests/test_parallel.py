import pytest

from sumtriples.parallel import (
    WORKERS_ENV,
    TaskFrontier,
    adaptive_frontier,
    count_parallel,
    default_workers,
    expand_frontier,
    run_parallel,
)
from sumtriples.solvers import SearchStats, Tier, count, expand, prepare_state
from sumtriples.state import from_full, from_subset


def test_depth_one_matches_root_branches():
    for tier in Tier:
        root = prepare_state(from_full(4), tier)
        _, children = expand(root, tier, SearchStats())
        fr = expand_frontier(from_full(4), 1, tier)
        assert [t.elements for t in fr.tasks] == [c.elements for _, c in children]
        assert fr.prefix_stats.calls == 1


def test_depth_beyond_tree_height():
    fr = expand_frontier(from_full(4), 20, Tier.BASIC)
    assert fr.tasks == []
    assert fr.prefix_stats == count(from_full(4), Tier.BASIC)


def test_depth_must_be_positive():
    with pytest.raises(ValueError):
        expand_frontier(from_full(4), 0, Tier.BASIC)


@pytest.mark.parametrize("tier", list(Tier))
@pytest.mark.parametrize("depth", [1, 2, 3, 20])
def test_split_equals_sequential(tier, depth):
    seq = count(from_full(8), tier)
    assert count_parallel(from_full(8), tier, workers=1, split_depth=depth) == seq
    assert seq.solutions == 3040


def test_two_workers_equal_sequential():
    seq = count(from_full(8), Tier.THM2_3)
    assert count_parallel(from_full(8), Tier.THM2_3, workers=2, split_depth=2) == seq


def test_empty_frontier():
    assert run_parallel(TaskFrontier([], 1), 4, Tier.THM2) == SearchStats()


def test_frontier_is_deterministic():
    a = expand_frontier(from_full(9), 3, Tier.THM2_3)
    b = expand_frontier(from_full(9), 3, Tier.THM2_3)
    assert [t.elements for t in a.tasks] == [t.elements for t in b.tasks]
    assert a.prefix_stats == b.prefix_stats


def test_adaptive_frontier_size():
    fr = adaptive_frontier(from_full(12), 2, Tier.THM2_3)
    assert len(fr.tasks) >= 64


def test_worker_precedence(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    assert default_workers() == 1
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert default_workers() == 3
    assert default_workers(5) == 5
    monkeypatch.setenv(WORKERS_ENV, "0")
    with pytest.raises(ValueError):
        default_workers()


def test_task_failure_propagates():
    bad = TaskFrontier([from_full(4), from_subset({1, 2, 3}, 3)], 1)
    with pytest.raises(ValueError):
        run_parallel(bad, 2, Tier.THM2_3)
    with pytest.raises(ValueError):
        run_parallel(bad, 1, Tier.THM2_3)
