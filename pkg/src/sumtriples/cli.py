"""Command-line front end.

    sumtriples count --n 9 --algo basic
    sumtriples bench --ns 8,9 --algos naive,basic,thm2,thm2+3 --format csv
    sumtriples a002849 --n 12 --format jsonl
    sumtriples verify --max-n 5 --subset-trials 200 --seed 7

Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing as mp
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Optional, Sequence, TextIO

from .oracle import MAX_ORACLE_BLOCKS
from .parallel import count_parallel, default_workers
from .solvers import SearchStats, SolverConfig, Tier, count, enumerate_partitions, feasible
from .state import from_full, from_subset
from .variant import exclusion_candidates, subproblem_stats, variant_problem
from .verify import run_battery

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

BENCH_COLUMNS = ("algo", "n", "count", "calls", "elapsed_ms")
ENUMERATE_MAX_N = 12


class UsageError(Exception):
    pass


@dataclass
class RunRecord:
    command: str
    algo: str
    n: int
    count: int
    calls: int
    prunes_sum: int = 0
    prunes_cutoff: int = 0
    prunes_balance: int = 0
    forced_moves: int = 0
    endgame_hits: int = 0
    elapsed_ms: int = 0
    workers: int = 1
    excluded: Optional[list[int]] = None

    @classmethod
    def from_stats(cls, command: str, tier: Tier, n: int, stats: SearchStats, elapsed_ms: int, workers: int, excluded=None) -> "RunRecord":
        return cls(
            command=command,
            algo=tier.value,
            n=n,
            count=stats.solutions,
            calls=stats.calls,
            prunes_sum=stats.prunes_sum,
            prunes_cutoff=stats.prunes_cutoff,
            prunes_balance=stats.prunes_balance,
            forced_moves=stats.forced_moves,
            endgame_hits=stats.endgame_hits,
            elapsed_ms=elapsed_ms,
            workers=workers,
            excluded=None if excluded is None else list(excluded),
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, line: str) -> "RunRecord":
        return cls(**json.loads(line))

    def to_text(self) -> str:
        parts = [f"{f.name}={getattr(self, f.name)}" for f in fields(self) if f.name != "excluded"]
        if self.excluded is not None:
            parts.insert(1, f"excluded={format_exclusion(self.excluded)}")
        return " ".join(parts)


def format_exclusion(e: Iterable[int]) -> str:
    return ",".join(str(v) for v in e)


def parse_exclusion(raw: str, n: int, size: int) -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in raw.split(",")) if raw.strip() else ()
    except ValueError:
        raise UsageError(f"invalid resume marker {raw!r}: expected comma-separated integers") from None
    if len(vals) != size or list(vals) != sorted(set(vals)) or any(not 1 <= v <= n for v in vals):
        raise UsageError(f"invalid resume marker {raw!r}: need {size} increasing values in 1..{n}")
    return vals


def _parse_int_list(raw: str, what: str) -> list[int]:
    items = [s for s in raw.split(",") if s.strip()]
    if not items:
        raise UsageError(f"{what} must not be empty")
    try:
        return [int(s) for s in items]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {raw!r}") from None


def _split_names(raw: str, what: str) -> list[str]:
    items = [s.strip() for s in raw.split(",") if s.strip()]
    if not items:
        raise UsageError(f"{what} must not be empty")
    return items


def _positive(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {raw}")
    return value


def _tier_arg(raw: str) -> Tier:
    try:
        return Tier.parse(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _workers(flag: Optional[int]) -> int:
    try:
        return default_workers(flag)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


class Emitter:
    """Writes RunRecords as text, csv or jsonl."""

    def __init__(self, fmt: str, out: TextIO) -> None:
        self.fmt = fmt
        self.out = out
        self._csv: Optional[csv.DictWriter] = None

    def note(self, message: str) -> None:
        if self.fmt == "text":
            print(f"# {message}", file=self.out)

    def record(self, rec: RunRecord) -> None:
        if self.fmt == "jsonl":
            print(rec.to_json(), file=self.out)
        elif self.fmt == "csv":
            row = asdict(rec)
            row["excluded"] = "" if rec.excluded is None else format_exclusion(rec.excluded)
            if self._csv is None:
                self._csv = csv.DictWriter(self.out, fieldnames=list(row), lineterminator="\n")
                self._csv.writeheader()
            self._csv.writerow(row)
        else:
            print(rec.to_text(), file=self.out)
        self.out.flush()


def _timed(fn):
    t0 = time.perf_counter()
    result = fn()
    return result, int(round((time.perf_counter() - t0) * 1000))


def run_full(n: int, tier: Tier, workers: int = 1, split_depth: Optional[int] = None) -> tuple[SearchStats, int]:
    """Count ``{1..3n}``; infeasible ``n`` returns zero without searching."""
    if not feasible(n):
        return SearchStats(), 0
    state = from_full(n)
    count(from_full(1), tier)  # compile outside the timed region
    if workers == 1 and split_depth is None:
        return _timed(lambda: count(state, tier))
    return _timed(lambda: count_parallel(state, tier, workers, split_depth))


# --- commands ----------------------------------------------------------------


def cmd_count(args, out: TextIO) -> int:
    tier = args.algo or Tier.THM2_3
    workers = _workers(args.workers)
    if args.split_depth is not None and args.split_depth < 1:
        raise UsageError("--split-depth must be at least 1")
    if args.enumerate and args.n > ENUMERATE_MAX_N:
        raise UsageError(f"--enumerate is limited to n <= {ENUMERATE_MAX_N}")
    if args.enumerate:
        stats, _ = run_full(args.n, tier)
        if stats.solutions > args.enumerate_cap:
            raise UsageError(f"--enumerate would print {stats.solutions} partitions (cap {args.enumerate_cap})")
    em = Emitter(args.format, out)
    if args.algo is None:
        em.note("algorithm defaults to thm2+3")
    if not feasible(args.n):
        em.note(f"n={args.n} is not 0 or 1 mod 4; no partition exists")
    if args.enumerate:
        if feasible(args.n):
            for part in enumerate_partitions(from_full(args.n), tier):
                triples = [[t.x, t.y, t.z] for t in part]
                if args.format == "jsonl":
                    print(json.dumps({"partition": triples}), file=out)
                else:
                    print(" ".join(f"{x}+{y}={z}" for x, y, z in triples), file=out)
    stats, ms = run_full(args.n, tier, workers, args.split_depth)
    em.record(RunRecord.from_stats("count", tier, args.n, stats, ms, workers))
    return EXIT_OK


def cmd_bench(args, out: TextIO) -> int:
    ns = _parse_int_list(args.ns, "--ns")
    if any(n < 1 for n in ns):
        raise UsageError("--ns values must be positive")
    try:
        algos = [Tier.parse(a) for a in _split_names(args.algos, "--algos")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for tier in algos:
        for n in ns:
            stats, ms = run_full(n, tier)
            rows.append({"algo": tier.value, "n": n, "count": stats.solutions, "calls": stats.calls, "elapsed_ms": ms})
    if args.format == "csv":
        w = csv.DictWriter(out, fieldnames=list(BENCH_COLUMNS), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        print("| " + " | ".join(BENCH_COLUMNS) + " |", file=out)
        print("|" + "|".join("---" for _ in BENCH_COLUMNS) + "|", file=out)
        for r in rows:
            print("| " + " | ".join(str(r[c]) for c in BENCH_COLUMNS) + " |", file=out)
    return EXIT_OK


def _variant_task(args):
    n, e, tier_name = args
    p = variant_problem(n)
    t0 = time.perf_counter()
    st = subproblem_stats(p, e, SolverConfig(tier=Tier(tier_name)))
    return e, st, int(round((time.perf_counter() - t0) * 1000))


def cmd_a002849(args, out: TextIO) -> int:
    tier = args.algo or Tier.THM2
    if tier is Tier.THM2_3:
        raise UsageError("thm2+3 needs the full problem {1..3n}; use thm2 or lower for a002849")
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    workers = _workers(args.workers)
    p = variant_problem(args.n)
    resume = parse_exclusion(args.resume_after, p.n, p.r) if args.resume_after is not None else None
    em = Emitter(args.format, out)
    if args.algo is None:
        em.note("algorithm defaults to thm2 (the endgame rule does not apply to subsets)")
    todo = [e for e in exclusion_candidates(p) if resume is None or e > resume]
    if args.max_sets is not None:
        todo = todo[: args.max_sets]
    payload = [(p.n, e, tier.value) for e in todo]
    count(from_subset([1, 2, 3], 3), tier)  # compile before forking
    total = SearchStats()
    total_ms = 0
    if workers == 1:
        results: Iterable = map(_variant_task, payload)
        pool = None
    else:
        ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
        pool = ProcessPoolExecutor(max_workers=workers, mp_context=ctx)
        results = pool.map(_variant_task, payload)
    try:
        for e, st, ms in results:
            total += st
            total_ms += ms
            em.record(RunRecord.from_stats("a002849", tier, p.n, st, ms, workers, excluded=e))
    finally:
        if pool is not None:
            pool.shutdown()
    if resume is not None or args.max_sets is not None:
        em.note(f"partial total over {len(todo)} exclusion sets")
    em.record(RunRecord.from_stats("a002849", tier, p.n, total, total_ms, workers))
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    if args.max_n > MAX_ORACLE_BLOCKS:
        raise UsageError(f"--max-n is limited to {MAX_ORACLE_BLOCKS} (oracle cost guard)")
    results = run_battery(args.max_n, args.subset_trials, args.seed, lambda r: print(r.summary(), file=out, flush=True))
    failed = [r for r in results if not r.ok]
    for r in failed:
        for msg in r.failures[:10]:
            print(f"  {r.name}: {msg}", file=out)
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumtriples", description="Count partitions of {1..3n} into triples x+y=z.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count partitions of {1..3n}")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--algo", type=_tier_arg, default=None, help="naive|basic|thm2|thm2+3 (default thm2+3)")
    p.add_argument("--workers", type=_positive, default=None, help="worker processes (overrides $SUMTRIPLES_WORKERS)")
    p.add_argument("--split-depth", type=int, default=None, help="frontier depth for parallel runs (default adaptive)")
    p.add_argument("--format", choices=("text", "csv", "jsonl"), default="text")
    p.add_argument("--enumerate", action="store_true", help="also print every partition (small n only)")
    p.add_argument("--enumerate-cap", type=_positive, default=SolverConfig().enumerate_cap)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bench", help="count/calls table over several n and algorithms")
    p.add_argument("--ns", required=True, help="comma-separated n values")
    p.add_argument("--algos", default=",".join(t.value for t in Tier))
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("a002849", help="count maximum collections of disjoint sum-triples in {1..n}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--algo", type=_tier_arg, default=None, help="naive|basic|thm2 (default thm2)")
    p.add_argument("--workers", type=_positive, default=None)
    p.add_argument("--format", choices=("text", "csv", "jsonl"), default="text")
    p.add_argument("--resume-after", default=None, help="skip exclusion sets up to this one, e.g. 1,4")
    p.add_argument("--max-sets", type=_positive, default=None, help="stop after this many exclusion sets")
    p.set_defaults(func=cmd_a002849)

    p = sub.add_parser("verify", help="run the cross-validation battery")
    p.add_argument("--max-n", type=int, default=MAX_ORACLE_BLOCKS)
    p.add_argument("--subset-trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"sumtriples {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
