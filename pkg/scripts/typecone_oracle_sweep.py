#!/usr/bin/env python3
"""Compare the fan-based facet oracle with the combinatorial facet description."""

import argparse
import time

from removahedra import suites


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    ok = True
    for n in range(1, args.max_n + 1):
        t = time.perf_counter()
        res = suites.verify_typecone(n, jobs=args.jobs)
        ok &= res.ok
        print(f"n={n}: {res.summary['decorations']} decorations, {res.summary['total_facets']} facets,"
              f" {'ok' if res.ok else 'MISMATCH'} ({time.perf_counter() - t:.1f}s)")
        for w in res.witnesses[:5]:
            print("   ", w)
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
