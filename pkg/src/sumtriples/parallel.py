"""Split one search across worker processes with sequential-identical totals.

The tree is expanded to a fixed depth in-process with the reference
``expand`` step; the states at that depth become independent tasks counted
by the compiled kernel. Because both paths account calls identically, the
prefix statistics plus the task statistics equal a sequential run exactly.
"""

from __future__ import annotations

import multiprocessing as mp
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .solvers import SearchStats, SolverConfig, Tier, count, expand, prepare_state
from .state import SearchState, from_full

WORKERS_ENV = "SUMTRIPLES_WORKERS"
TASKS_PER_WORKER = 32
MAX_SPLIT_DEPTH = 8


def default_workers(flag: Optional[int] = None) -> int:
    """Worker count: explicit flag, else the environment variable, else 1."""
    if flag is not None:
        return flag
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return value


@dataclass
class TaskFrontier:
    tasks: list[SearchState]
    split_depth: int
    prefix_stats: SearchStats = field(default_factory=SearchStats)


def _tier(config: SolverConfig | Tier) -> Tier:
    return config.tier if isinstance(config, SolverConfig) else config


def expand_frontier(state: SearchState, split_depth: int, config: SolverConfig | Tier) -> TaskFrontier:
    """Expand ``state`` down to ``split_depth`` in depth-first discovery order."""
    if split_depth < 1:
        raise ValueError("split_depth must be at least 1")
    tier = _tier(config)
    prefix = SearchStats()
    tasks: list[SearchState] = []
    stack = [(prepare_state(state, tier), 0)]
    while stack:
        node, depth = stack.pop()
        if depth == split_depth:
            tasks.append(node)
            continue
        _, children = expand(node, tier, prefix)
        stack.extend((child, depth + 1) for _, child in reversed(children))
    return TaskFrontier(tasks=tasks, split_depth=split_depth, prefix_stats=prefix)


def adaptive_frontier(state: SearchState, workers: int, config: SolverConfig | Tier) -> TaskFrontier:
    """Shallowest frontier with at least ``32 * workers`` tasks (or the deepest tried)."""
    frontier = expand_frontier(state, 1, config)
    for depth in range(2, MAX_SPLIT_DEPTH + 1):
        if len(frontier.tasks) >= TASKS_PER_WORKER * workers or not frontier.tasks:
            break
        frontier = expand_frontier(state, depth, config)
    return frontier


def _count_task(args: tuple[SearchState, str]) -> SearchStats:
    state, tier_name = args
    return count(state, Tier(tier_name))


def _warm_up(tier: Tier) -> None:
    # compile before forking so workers inherit the machine code
    count(from_full(1), tier)


def run_parallel(frontier: TaskFrontier, workers: int, config: SolverConfig | Tier) -> SearchStats:
    """Count every task and merge with the prefix; totals do not depend on ``workers``."""
    if workers < 1:
        raise ValueError("workers must be at least 1")
    tier = _tier(config)
    total = SearchStats() + frontier.prefix_stats
    if not frontier.tasks:
        return total
    payload = [(t, tier.value) for t in frontier.tasks]
    if workers == 1:
        results = map(_count_task, payload)
        for st in results:
            total += st
        return total
    _warm_up(tier)
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        # map yields in submission order and re-raises the first task failure
        for st in pool.map(_count_task, payload, chunksize=max(1, len(payload) // (8 * workers))):
            total += st
    return total


def count_parallel(
    state: SearchState,
    config: SolverConfig | Tier = Tier.THM2_3,
    workers: int = 1,
    split_depth: Optional[int] = None,
) -> SearchStats:
    if split_depth is None:
        frontier = adaptive_frontier(state, workers, config)
    else:
        frontier = expand_frontier(state, split_depth, config)
    return run_parallel(frontier, workers, config)
