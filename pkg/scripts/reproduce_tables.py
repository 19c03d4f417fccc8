"""Print solution counts and call counts per tier next to the published values.

    python scripts/reproduce_tables.py --ns 8,9 [--with-12]
"""

import argparse
import time

from sumtriples.solvers import Tier, count
from sumtriples.state import from_full

PUBLISHED_COUNTS = {8: 3040, 9: 20505, 12: 10567748, 13: 103372655, 16: 142664107305, 17: 1836652173363}
PUBLISHED_CALLS = {
    8: {"naive": 435083, "basic": 49059, "thm2": 39793, "thm2+3": 36103},
    9: {"naive": 4567652, "basic": 401092, "thm2": 307826, "thm2+3": 287085},
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ns", default="8,9")
    parser.add_argument("--tiers", default=",".join(t.value for t in Tier))
    args = parser.parse_args()
    ns = [int(v) for v in args.ns.split(",")]
    tiers = [Tier.parse(t) for t in args.tiers.split(",")]

    for tier in tiers:
        count(from_full(1), tier)

    print("| n | tier | count | published count | calls | published calls | ratio | seconds |")
    print("|---|---|---|---|---|---|---|---|")
    for n in ns:
        for tier in tiers:
            t0 = time.perf_counter()
            st = count(from_full(n), tier)
            dt = time.perf_counter() - t0
            pub_calls = PUBLISHED_CALLS.get(n, {}).get(tier.value)
            ratio = f"{st.calls / pub_calls:.3f}" if pub_calls else "-"
            print(
                f"| {n} | {tier.value} | {st.solutions} | {PUBLISHED_COUNTS.get(n, '-')} | {st.calls} "
                f"| {pub_calls or '-'} | {ratio} | {dt:.2f} |"
            )


if __name__ == "__main__":
    main()
