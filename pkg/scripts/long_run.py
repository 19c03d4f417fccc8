"""Checkpointed long computations.

Full problem (n=16, 17): the frontier is expanded once and finished tasks are
appended to a jsonl checkpoint, so an interrupted run resumes where it stopped.

    python scripts/long_run.py full --n 16 --workers 64 --checkpoint n16.jsonl

Variant (n=43, 44): one checkpoint line per exclusion set.

    python scripts/long_run.py a002849 --n 43 --workers 64 --checkpoint a43.jsonl
"""

import argparse
import json
import multiprocessing as mp
import os
from concurrent.futures import ProcessPoolExecutor, as_completed

from sumtriples.parallel import adaptive_frontier, default_workers, expand_frontier
from sumtriples.solvers import SearchStats, SolverConfig, Tier, count
from sumtriples.state import from_full, from_subset
from sumtriples.variant import exclusion_candidates, remaining_set, variant_problem


def _load(path: str) -> dict[str, dict]:
    done = {}
    if not os.path.exists(path):
        return done
    with open(path, "rb+") as fh:
        good = 0
        for line in fh:
            if not line.endswith(b"\n"):
                break
            rec = json.loads(line)
            done[rec["key"]] = rec
            good += len(line)
        fh.truncate(good)  # drop a torn final write so appends stay line-aligned
    return done


def _full_task(args):
    key, elements, value_bound, low, high, mode, full, tier = args
    from sumtriples.state import Mode, SearchState

    state = SearchState(tuple(elements), value_bound, low, high, Mode(mode), full)
    return key, count(state, Tier(tier))


def _variant_task(args):
    key, n, excluded, tier = args
    p = variant_problem(n)
    return key, count(from_subset(remaining_set(p, tuple(excluded)), n), Tier(tier))


def _run(payload, workers, task, checkpoint, done):
    total = SearchStats()
    for rec in done.values():
        total += SearchStats(**rec["stats"])
    todo = [p for p in payload if p[0] not in done]
    print(f"{len(done)} tasks already done, {len(todo)} to go", flush=True)
    count(from_subset([1, 2, 3], 3), Tier.THM2)
    count(from_full(1), Tier.THM2_3)
    ctx = mp.get_context("fork")
    with open(checkpoint, "a") as fh, ProcessPoolExecutor(workers, mp_context=ctx) as pool:
        futures = [pool.submit(task, p) for p in todo]
        for i, fut in enumerate(as_completed(futures), 1):
            key, st = fut.result()
            total += st
            fh.write(json.dumps({"key": key, "stats": st.as_dict()}) + "\n")
            fh.flush()
            if i % 100 == 0 or i == len(todo):
                print(f"{i}/{len(todo)} running total {total.solutions}", flush=True)
    return total


def run_full(args) -> None:
    tier = Tier.THM2_3
    state = from_full(args.n)
    if args.split_depth:
        frontier = expand_frontier(state, args.split_depth, tier)
    else:
        frontier = adaptive_frontier(state, args.workers, tier)
    payload = [
        (str(i), list(t.elements), t.value_bound, t.low_sum, t.high_sum, int(t.mode), t.full_problem, tier.value)
        for i, t in enumerate(frontier.tasks)
    ]
    done = _load(args.checkpoint)
    total = frontier.prefix_stats + _run(payload, args.workers, _full_task, args.checkpoint, done)
    print(json.dumps({"n": args.n, "tasks": len(payload), **total.as_dict()}))


def run_variant(args) -> None:
    p = variant_problem(args.n)
    payload = [(",".join(map(str, e)), p.n, list(e), Tier.THM2.value) for e in exclusion_candidates(p)]
    done = _load(args.checkpoint)
    total = _run(payload, args.workers, _variant_task, args.checkpoint, done)
    print(json.dumps({"n": args.n, "exclusion_sets": len(payload), **total.as_dict()}))


def main() -> None:
    parser = argparse.ArgumentParser(description="checkpointed long runs")
    sub = parser.add_subparsers(dest="what", required=True)
    for name in ("full", "a002849"):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--checkpoint", required=True)
        if name == "full":
            p.add_argument("--split-depth", type=int, default=None)
    args = parser.parse_args()
    args.workers = default_workers(args.workers)
    (run_full if args.what == "full" else run_variant)(args)


if __name__ == "__main__":
    main()
