#!/usr/bin/env python3
"""Classical vs boundary-corrected error bound across a sweep of heights.

For a weight phi the classical tail bound is A (2 phi(T) log T + int_T phi/t);
the boundary-corrected bound replaces it with a remainder that decays like
phi(T)/T.  This prints both and their ratio on a geometric grid of T.

    python3 scripts/compare_bounds.py
    python3 scripts/compare_bounds.py --phi "1/t^2" --t-min 30 --t-max 1e6 --points 8
"""

import argparse
import math

from zetasum.ball import Ball, ball_log
from zetasum.estimator import CONSTANTS, _phi_over_t_integral, e2_bound
from zetasum.phifunc import eval_ball, make_phi


def _upper(b: Ball) -> float:
    return float(b.mid) + b.rad


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--phi", default="builtin:inv_square", help="weight (DSL or builtin)")
    ap.add_argument("--t-min", type=float, default=2 * math.pi * math.e)
    ap.add_argument("--t-max", type=float, default=1e5)
    ap.add_argument("--points", type=int, default=6)
    args = ap.parse_args()

    spec = make_phi(args.phi)
    if args.t_min < 2 * math.pi * math.e or args.t_max <= args.t_min:
        raise SystemExit("need 2*pi*e <= t-min < t-max")

    print(f"phi = {args.phi}")
    print(f"{'T':>12}  {'classical':>12}  {'corrected':>12}  {'ratio':>10}")
    step = (args.t_max / args.t_min) ** (1.0 / max(1, args.points - 1))
    for i in range(args.points):
        T = Ball.exact(args.t_min * step**i)
        phi_T = eval_ball(spec.body, T)
        tail = _phi_over_t_integral(
            spec, T, None, max(1e-18, 1e-3 * _upper(phi_T) / float(T.mid))
        )
        classical = Ball.exact(CONSTANTS.A) * (2 * phi_T * ball_log(T) + tail)
        corrected = e2_bound(spec, T)
        c, e = _upper(classical), _upper(corrected)
        print(f"{float(T.mid):>12.1f}  {c:>12.3e}  {e:>12.3e}  {c / e:>10.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
