"""Run every verification suite and print one JSON report per line, with timings on stderr.

    python scripts/run_all_suites.py --seed 0 > reports.jsonl
"""
import argparse
import sys
import time

from catca.suites import SUITES, run_suite

ap = argparse.ArgumentParser()
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("suites", nargs="*", default=list(SUITES))
args = ap.parse_args()

failed = 0
for name in args.suites:
    t0 = time.perf_counter()
    rep = run_suite(name, seed=args.seed)
    print(rep.to_json(), flush=True)
    print(f"{name:30s} {rep.verdict:4s} {rep.cases:7d} cases {time.perf_counter() - t0:6.1f}s", file=sys.stderr)
    failed += not rep.passed
sys.exit(1 if failed else 0)
