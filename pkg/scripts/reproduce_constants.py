#!/usr/bin/env python3
"""Reproduce the three named constants from freshly computed zeros.

Builds (or loads) a zero table, then prints each constant with its certified
enclosure and the distance to the independently known value.

    python3 scripts/reproduce_constants.py --n 10000
    python3 scripts/reproduce_constants.py --zeros table.tsv --n 649
"""

import argparse
import math
import time
from fractions import Fraction

from zetasum.estimator import estimate_H, estimate_c1, estimate_c2
from zetasum.zeros import find_zeros, import_zeros

REFERENCES = {
    "c1": ("sum 1/gamma^2", Fraction("0.0231049931154189707889338104")),
    "c2": ("lim sum 1/log^2(gamma/2pi) - li(T/2pi)", Fraction("-0.5276697875")),
    "H": ("lim sum 1/gamma - log^2(T/2pi)/4pi", Fraction("-0.0171594043070981495")),
}


def height_for(n: int) -> float:
    """Height whose zero count comfortably exceeds n (counting-term inversion)."""
    t = max(50.0, float(n))
    for _ in range(40):
        t = max(50.0, 2 * math.pi * (n + 0.875) / math.log(t / (2 * math.pi * math.e)))
    return t + 2.5 * 2 * math.pi / math.log(t / (2 * math.pi))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10000, help="zeros to use")
    ap.add_argument("--zeros", default=None, help="existing table (else compute)")
    args = ap.parse_args()

    if args.zeros:
        table = import_zeros(args.zeros)
    else:
        t0 = time.time()
        table = find_zeros(height_for(args.n))
        print(f"computed {len(table)} zeros in {time.time() - t0:.1f}s")
    if len(table) < args.n:
        raise SystemExit(f"table holds {len(table)} zeros, need {args.n}")

    for name, fn in (("c1", estimate_c1), ("c2", estimate_c2), ("H", estimate_H)):
        est = fn(table, args.n)
        desc, ref = REFERENCES[name]
        err = abs(float(est.value.mid) - float(ref))
        print(f"\n{name}: {desc}")
        print(f"  enclosure: {float(est.value.mid):+.15f} +- {est.value.rad:.3e}")
        print(f"  reference: {float(ref):+.15f}   |mid-ref| = {err:.3e}")
        inside = "yes" if est.value.contains(ref) else "NO"
        print(f"  reference inside enclosure: {inside}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
