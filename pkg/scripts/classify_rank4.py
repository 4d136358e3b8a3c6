"""Enumerate rank-4 surface-type Gram matrices and connect each one to (A) or B_m."""

import argparse
import json
import logging
import time

from ncsurf.classify import SearchParams, classify_rank4


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", help="write the full report here")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    t0 = time.perf_counter()
    report = classify_rank4(args.bound, SearchParams(), workers=args.workers)
    print(report)
    print(f"{time.perf_counter() - t0:.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_dict(), fh, indent=1)
    return 1 if report.unresolved else 0


if __name__ == "__main__":
    raise SystemExit(main())
