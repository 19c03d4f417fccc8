"""Cross-validation battery behind ``sumtriples verify``.

Every suite compares two routes that share as little logic as possible and
records the first offending instance in full so it can be replayed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .oracle import MAX_ORACLE_BLOCKS, oracle_count
from .solvers import Tier, count, count_reference, endgame_partitions
from .state import Mode, SearchState, candidate_partners, from_full, from_subset, remove_triple

SUBSET_UNIVERSE = 15
SUBSET_SIZES = (6, 9, 12, 15)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failed"


def walk_states(state: SearchState) -> Iterator[SearchState]:
    """Every state of the unpruned smallest-first search tree below ``state``."""
    stack = [state]
    while stack:
        s = stack.pop()
        yield s
        if s.m == 0:
            continue
        general = s if s.mode is Mode.GENERAL else s.with_mode(Mode.GENERAL)
        for i, k in candidate_partners(general):
            stack.append(remove_triple(general, i, k))


def random_subsets(trials: int, seed: int, sizes=SUBSET_SIZES, universe: int = SUBSET_UNIVERSE) -> list[list[int]]:
    rng = random.Random(seed)
    return [sorted(rng.sample(range(1, universe + 1), sizes[t % len(sizes)])) for t in range(trials)]


def scan_count(state: SearchState, restricted: bool) -> int:
    """Count by plain smallest-first scanning, optionally low-low-high only."""
    if state.m == 0:
        return 1
    mode = Mode.REDUCED if restricted else Mode.GENERAL
    s = SearchState(state.elements, state.value_bound, state.low_sum, state.high_sum, mode, state.full_problem)
    return sum(scan_count(remove_triple(s, i, k), restricted) for i, k in candidate_partners(s))


def endgame_count(state: SearchState) -> int:
    if state.low_sum != state.high_sum:
        return 0
    return len(endgame_partitions(state.elements))


def suite_full_problems(max_n: int) -> SuiteResult:
    """All tiers, compiled and reference, against each other and the oracle."""
    res = SuiteResult("full-problem tier agreement")
    for n in range(1, max_n + 1):
        st = from_full(n)
        expected = oracle_count(st.elements) if n <= MAX_ORACLE_BLOCKS else None
        for tier in Tier:
            got = count(st, tier)
            ref = count_reference(st, tier)
            res.checked += 1
            if got != ref:
                res.fail(f"n={n} tier={tier.value}: compiled {got} != reference {ref}")
            elif expected is not None and got.solutions != expected:
                res.fail(f"n={n} tier={tier.value}: {got.solutions} != oracle {expected}")
    return res


def suite_random_subsets(trials: int, seed: int) -> SuiteResult:
    res = SuiteResult(f"oracle agreement on random subsets of 1..{SUBSET_UNIVERSE}")
    for vals in random_subsets(trials, seed):
        st = from_subset(vals, SUBSET_UNIVERSE)
        expected = oracle_count(vals)
        got = {tier.value: count(st, tier).solutions for tier in (Tier.NAIVE, Tier.BASIC, Tier.THM2)}
        got["thm2/reference"] = count_reference(st, Tier.THM2).solutions
        res.checked += 1
        if any(v != expected for v in got.values()):
            res.fail(f"subset={vals}: oracle {expected}, solvers {got}")
    return res


def suite_sum_consistency(max_n: int, trials: int, seed: int) -> SuiteResult:
    """Random removal paths; cached sums must match recomputation at every step."""
    res = SuiteResult("remove_triple sum consistency")
    rng = random.Random(seed)
    starts = [from_full(n) for n in range(1, max_n + 1)]
    starts += [from_subset(v, SUBSET_UNIVERSE) for v in random_subsets(trials, seed + 1)]
    for start in starts:
        for _ in range(4):
            s = start
            while s.m > 0:
                pairs = list(candidate_partners(s))
                if not pairs:
                    break
                i, k = rng.choice(pairs)
                nxt = remove_triple(s, i, k)
                res.checked += 1
                try:
                    nxt.check()
                except AssertionError as exc:
                    res.fail(f"subset={list(s.elements)} remove (i={i}, k={k}): {exc}")
                    break
                s = nxt
    return res


def _balanced_states(max_n: int, trials: int, seed: int) -> Iterator[SearchState]:
    for n in range(1, max_n + 1):
        for s in walk_states(from_full(n)):
            if s.m >= 1 and s.low_sum == s.high_sum:
                yield s
    for vals in random_subsets(trials, seed):
        s = from_subset(vals, SUBSET_UNIVERSE)
        if s.low_sum == s.high_sum:
            yield s


def suite_reduced_soundness(max_n: int, trials: int, seed: int) -> SuiteResult:
    res = SuiteResult("REDUCED-mode soundness")
    for s in _balanced_states(max_n, trials, seed):
        res.checked += 1
        full, restricted = scan_count(s, False), scan_count(s, True)
        if full != restricted:
            res.fail(f"subset={list(s.elements)}: unrestricted {full} != low-low-high only {restricted}")
    return res


def suite_forced_moves(max_n: int, trials: int, seed: int) -> SuiteResult:
    res = SuiteResult("forced-move soundness")
    for s in _balanced_states(max_n, trials, seed):
        m = s.m
        els = s.elements
        if m < 2 or els[0] + els[2 * m - 1] != els[-1]:
            continue
        res.checked += 1
        forced = scan_count(remove_triple(s, 2 * m, 3 * m), False)
        everything = scan_count(s, False)
        thm2 = count(s, Tier.THM2).solutions
        if not (forced == everything == thm2):
            res.fail(f"subset={list(els)}: forced {forced}, all branches {everything}, thm2 {thm2}")
    return res


def suite_endgame(ns) -> SuiteResult:
    res = SuiteResult("endgame completeness")
    for n in ns:
        for s in walk_states(from_full(n)):
            if s.m != 2:
                continue
            res.checked += 1
            expected = oracle_count(s.elements)
            got = endgame_count(s)
            if got != expected:
                res.fail(f"n={n} remainder={list(s.elements)}: endgame {got} != oracle {expected}")
    return res


def run_battery(
    max_n: int, subset_trials: int, seed: int, report: Optional[Callable[[SuiteResult], None]] = None
) -> list[SuiteResult]:
    if max_n > MAX_ORACLE_BLOCKS:
        raise ValueError(f"max_n is limited to {MAX_ORACLE_BLOCKS} by the oracle")
    suites = [
        ("full-problem tier agreement", lambda: suite_full_problems(max_n)),
        ("oracle agreement", lambda: suite_random_subsets(subset_trials, seed)),
        ("remove_triple sum consistency", lambda: suite_sum_consistency(max_n, subset_trials, seed)),
        ("REDUCED-mode soundness", lambda: suite_reduced_soundness(max_n, subset_trials, seed)),
        ("forced-move soundness", lambda: suite_forced_moves(max_n, subset_trials, seed)),
        ("endgame completeness", lambda: suite_endgame(range(2, max_n + 1))),
    ]
    results = []
    for name, run in suites:
        try:
            r = run()
        except Exception as exc:  # a crash is a failed suite, not a crashed battery
            r = SuiteResult(name)
            r.fail(f"{type(exc).__name__}: {exc}")
        results.append(r)
        if report is not None:
            report(r)
    return results
