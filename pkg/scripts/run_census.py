#!/usr/bin/env python3
"""Regenerate the K3,3-free census column by column with progress output.

Equivalent to `k33free census` but prints per-level timings and keeps
checkpoints, which is what you want for the long columns.

    python scripts/run_census.py --n-max 8 --jobs 4 --work-dir runs/census
"""

import argparse
import sys
import time

from k33free import generate, tables


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--work-dir", help="checkpoint directory (resumable)")
    args = ap.parse_args()

    bad = 0
    for n in range(args.n_min, args.n_max + 1):
        t0 = time.time()
        print(f"column n={n}:")
        col = generate.classify_column(
            n, n, jobs=args.jobs, out_dir=args.work_dir, progress=True
        )
        for m in range(3, n + 1):
            res = col[m]
            exp = tables.expected(m, n)
            got = (res.main_class_count, res.isotopy_class_count,
                   res.total_labeled_count)
            if exp is None:
                verdict = "untabulated"
            elif got == (exp.main, exp.iso, exp.total):
                verdict = "ok"
            else:
                verdict = f"MISMATCH, expected {(exp.main, exp.iso, exp.total)}"
                bad += 1
            print(f"  ({m},{n}) main {got[0]} iso {got[1]} total {got[2]}  [{verdict}]")
        print(f"column n={n} done in {time.time() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
