#!/usr/bin/env python3
"""Print the naive-vs-accelerated comparison table for the 1/log^2 constant.

    python3 scripts/make_table1.py                      # compute zeros (slow past n=10^4)
    python3 scripts/make_table1.py --zeros table.tsv
    python3 scripts/make_table1.py --csv out.csv
"""

import argparse
import time

from zetasum.estimator import table1_report
from zetasum.zeros import find_zeros, import_zeros


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--zeros", default=None, help="existing table (else compute)")
    ap.add_argument("--t-max", type=float, default=9881.0,
                    help="height to certify when computing (default covers n=10^4)")
    ap.add_argument("--csv", default=None, help="also write machine-readable rows here")
    args = ap.parse_args()

    if args.zeros:
        table = import_zeros(args.zeros)
    else:
        t0 = time.time()
        table = find_zeros(args.t_max)
        print(f"computed {len(table)} zeros in {time.time() - t0:.1f}s")

    rep = table1_report(table)
    print(rep.as_text())
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(rep.as_csv())
        print(f"wrote {args.csv}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
