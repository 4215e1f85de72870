"""Command-line front end.

Subcommands:

  zeros find      locate and certify zeros up to a height (or a count)
  zeros import    validate a zero-table file and summarize it
  zeros info      table statistics
  estimate        run one estimator and print its decomposition
  constants       reproduce a named constant (c1, c2, H)
  table1          naive-vs-accelerated comparison table for c2
  compare-bounds  classical bound vs the boundary-corrected bound at one T

Zero tables are files: `zeros find --out` writes one, every other command
reads one via --zeros PATH (or recomputes with --zeros compute, which is the
slow path).  Output midpoints are printed to radius-justified length -- two
guard digits past the enclosure's certainty -- so a printed digit is never
an over-claim.  All runs are deterministic for a fixed invocation.

Exit code 0 means no module reported an error; any expected failure prints
its "module.operation: detail" message on stderr and exits 1.
"""

from __future__ import annotations

import argparse
import math
import sys
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .ball import Ball, ball_log, ball_two_pi
from .config import precision_bits, set_precision_bits
from .errors import DomainError, ZetasumError
from .estimator import (
    CONSTANTS,
    SumEstimate,
    _midpoint_T,
    _phi_over_t_integral,
    _upper,
    convergent_total,
    divergent_limit,
    e2_bound,
    estimate_c1,
    estimate_c2,
    estimate_H,
    lehman_estimate,
    table1_report,
)
from .phifunc import eval_ball, make_phi
from .zeros import ZeroTable, find_zeros, import_zeros, write_zeros

_MIN_FIND_HEIGHT = 15.0


@dataclass(frozen=True)
class RunConfig:
    """Global knobs shared by all subcommands."""

    precision_bits: int = 128
    mode: str = "certified"  # certified | fast
    refine_tol: float = 1e-9
    quad_tol_factor: float = 1e-3
    zero_source: str | None = None  # path or "compute"
    t_max: float | None = None
    n_zeros: int | None = None

    def __post_init__(self):
        if self.mode not in ("certified", "fast"):
            raise DomainError(f"cli: unknown mode {self.mode!r}")
        # Certified mode (the default) runs every hardy-z remainder in its
        # rigorous form.  Every current command does so regardless; "fast"
        # is accepted so batch scripts can pin intent once heuristic
        # remainders gain a consumer here.


def _fmt(b: Ball) -> str:
    """Midpoint to radius-justified decimals, with the radius alongside."""
    if b.rad == 0.0:
        return f"{format(b.mid, '.20f')} (exact to shown digits)"
    digits = max(1, min(40, int(-math.log10(b.rad)) + 2))
    return f"{format(b.mid, f'.{digits}f')} +- {b.rad:.3e}"


def _load_table(args, needed_count: int | None = None) -> ZeroTable:
    src = getattr(args, "zeros", None)
    if src is None:
        raise DomainError("cli: this command needs --zeros PATH or --zeros compute")
    if src != "compute":
        return import_zeros(src)
    if needed_count is not None:
        return _find_by_count(needed_count, args.config.refine_tol)
    t_max = getattr(args, "t_max", None) or args.config.t_max
    if t_max is None:
        raise DomainError("cli: --zeros compute needs --t-max or --n for extent")
    return find_zeros(max(t_max, _MIN_FIND_HEIGHT), args.config.refine_tol)


def _find_by_count(count: int, refine_tol: float) -> ZeroTable:
    """Compute a certified table holding at least `count` zeros."""
    from .fastz import gram_points_f

    # the k-th zero sits near the (k-2)-nd Gram point; pad a few mean gaps
    idx = count + 2
    t = float(gram_points_f(idx, idx)[0])
    for _ in range(4):
        table = find_zeros(max(t, _MIN_FIND_HEIGHT), refine_tol)
        if len(table) >= count:
            return table
        t += 8.0 * 2 * math.pi / math.log(max(t, 20.0) / (2 * math.pi))
    raise DomainError(f"cli: could not certify {count} zeros below t={t:.3f}")


# -- zeros ----------------------------------------------------------------------


def _trimmed(table: ZeroTable, t_max: float) -> ZeroTable:
    if t_max >= table.height_max:
        return table
    kept = tuple(g for g in table.ordinates if float(g.mid) <= t_max)
    return ZeroTable(ordinates=kept, source=table.source, height_max=t_max)


def cmd_zeros(args) -> int:
    if args.zeros_cmd == "find":
        t_max = args.t_max
        if t_max is None and args.n is None:
            raise DomainError("cli: zeros find needs --t-max or --n")
        if t_max is None:
            table = _find_by_count(args.n, args.tol)
        else:
            table = find_zeros(max(t_max, _MIN_FIND_HEIGHT), args.tol)
            if t_max < _MIN_FIND_HEIGHT:
                table = _trimmed(table, t_max)
        print(f"{len(table)} zeros, certified complete to height {table.height_max:g}")
        if args.out:
            write_zeros(table, args.out)
            print(f"wrote {args.out}")
        return 0
    if args.zeros_cmd == "import":
        table = import_zeros(args.infile)
        first = table.ordinates[0]
        last = table.ordinates[-1]
        print(f"{len(table)} zeros, certified complete to height {table.height_max:.6f}")
        print(f"first ordinate: {_fmt(first)}")
        print(f"last ordinate:  {_fmt(last)}")
        return 0
    if args.zeros_cmd == "info":
        table = import_zeros(args.infile)
        mids = [float(g.mid) for g in table.ordinates]
        gaps = [b - a for a, b in zip(mids, mids[1:])]
        print(f"count:      {len(table)}")
        print(f"height_max: {table.height_max!r}")
        print(f"source:     {table.source}")
        print(f"max radius: {max((g.rad for g in table.ordinates), default=0.0):.3e}")
        if gaps:
            print(f"gap min/mean/max: {min(gaps):.6f} / "
                  f"{sum(gaps) / len(gaps):.6f} / {max(gaps):.6f}")
        return 0
    raise DomainError(f"cli: unknown zeros subcommand {args.zeros_cmd!r}")


# -- estimate ---------------------------------------------------------------------


def _print_estimate(est: SumEstimate) -> None:
    print(f"method:        {est.method}")
    print(f"T used:        {format(est.T_used.mid, '.9f')} (past zero {est.n_zeros})")
    print(f"partial sum:   {_fmt(est.partial_sum)}")
    print(f"integral term: {_fmt(est.integral_term)}")
    print(f"boundary term: {_fmt(est.boundary_term)}")
    print(f"error bound:   {_upper(est.error_bound):.6e}")
    print(f"value:         {_fmt(est.value)}")


def _n_from_T(table: ZeroTable, T: float) -> int:
    mids = [float(g.mid) for g in table.ordinates]
    n = bisect_left(mids, T)
    if not 1 <= n <= len(mids) - 1:
        raise DomainError(
            f"cli: T={T} must lie strictly inside the table's zero range"
        )
    return n


def cmd_estimate(args) -> int:
    spec = make_phi(args.phi)
    table = _load_table(args, needed_count=(args.n + 1) if args.n else None)
    if args.n is not None:
        n_use = args.n
    elif args.T is not None:
        n_use = _n_from_T(table, args.T)
    else:
        raise DomainError("cli: estimate needs --n or --T")

    if args.method == "theorem1":
        est = convergent_total(table, spec, n_use)
    elif args.method == "theorem4":
        t0 = Ball.exact(Fraction(args.T0)) if args.T0 is not None else (
            Ball.exact(Fraction(spec.T0))
        )
        est = divergent_limit(table, spec, t0, n_use)
    elif args.method == "lehman":
        est = lehman_estimate(table, spec, _midpoint_T(table, n_use), None)
    else:
        raise DomainError(f"cli: unknown method {args.method!r}")
    _print_estimate(est)
    return 0


# -- constants / table1 / compare-bounds ----------------------------------------------


_CONSTANT_INFO = {
    "c1": "sum of 1/gamma^2 over all ordinates (convergent; boundary-corrected tail)",
    "c2": "limit of [sum' 1/log^2(gamma/2pi) - li(T/2pi)] (divergent family)",
    "H": "limit of [sum' 1/gamma - log^2(T/2pi)/(4 pi)] (divergent family)",
}


def cmd_constants(args) -> int:
    table = _load_table(args, needed_count=args.n + 1)
    if args.name == "c1":
        est = estimate_c1(table, args.n)
    elif args.name == "c2":
        est = estimate_c2(table, args.n)
    elif args.name == "H":
        est = estimate_H(table, args.n)
    else:
        raise DomainError(f"cli: unknown constant {args.name!r}")
    print(f"{args.name}: {_CONSTANT_INFO[args.name]}")
    print(f"zeros used: {args.n} (table holds {len(table)})")
    _print_estimate(est)
    return 0


def cmd_table1(args) -> int:
    table = _load_table(args, needed_count=(args.max_n + 1) if args.max_n else None)
    rep = table1_report(table)
    if args.max_n is not None:
        from .estimator import _TABLE_ROWS

        rows = tuple(r for r in rep.rows if r.n <= args.max_n)
        still_missing = [
            n for n in _TABLE_ROWS
            if n <= args.max_n and n not in {r.n for r in rows}
        ]
        notice = None
        if still_missing:
            notice = (
                f"# rows {', '.join(str(m) for m in still_missing)} omitted: "
                f"table holds only {len(table)} zeros"
            )
        rep = type(rep)(rows=rows, notice=notice)
    print(rep.as_text())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.as_csv())
        print(f"wrote {args.out}")
    return 0


def cmd_compare_bounds(args) -> int:
    spec = make_phi(args.phi)
    T = Ball.exact(Fraction(args.T))
    if args.T < 2 * math.pi * math.e:
        raise DomainError(
            f"cli: compare-bounds needs T >= 2*pi*e, got {args.T}"
        )
    phi_T = eval_ball(spec.body, T)
    ratio_int = _phi_over_t_integral(
        spec, T, None, max(1e-18, 1e-3 * _upper(phi_T) / args.T)
    )
    classical = Ball.exact(CONSTANTS.A) * (2 * phi_T * ball_log(T) + ratio_int)
    corrected = e2_bound(spec, T)
    print(f"classical bound A(2 phi log T + int phi/t): {_upper(classical):.6e}")
    print(f"boundary-corrected bound:                   {_upper(corrected):.6e}")
    print(f"improvement factor:                         "
          f"{_upper(classical) / _upper(corrected):.2f}")
    return 0


# -- parser -----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zetasum",
        description="Certified weighted sums over zeta-zero ordinates",
    )
    p.add_argument("--precision-bits", type=int, default=None,
                   help="MPFR working precision (default 128 or env)")
    p.add_argument("--mode", choices=("certified", "fast"), default="certified")
    p.add_argument("--quad-tol-factor", type=float, default=1e-3)
    sub = p.add_subparsers(dest="command", required=True)

    pz = sub.add_parser("zeros", help="produce, validate, or inspect zero tables")
    zsub = pz.add_subparsers(dest="zeros_cmd", required=True)
    zf = zsub.add_parser("find")
    zf.add_argument("--t-max", type=float, default=None)
    zf.add_argument("--n", type=int, default=None, help="find at least N zeros")
    zf.add_argument("--out", default=None)
    zf.add_argument("--tol", type=float, default=1e-9,
                    help="entry radius for located zeros")
    zi = zsub.add_parser("import")
    zi.add_argument("--in", dest="infile", required=True)
    zn = zsub.add_parser("info")
    zn.add_argument("--in", dest="infile", required=True)

    pe = sub.add_parser("estimate", help="run one estimator, print decomposition")
    pe.add_argument("--phi", required=True,
                    help='weight: DSL text or builtin:NAME[:PARAM]')
    pe.add_argument("--zeros", required=True, help="table path, or 'compute'")
    pe.add_argument("--n", type=int, default=None)
    pe.add_argument("--T", type=float, default=None)
    pe.add_argument("--method", choices=("lehman", "theorem1", "theorem4"),
                    required=True)
    pe.add_argument("--T0", type=float, default=None)

    pc = sub.add_parser("constants", help="reproduce a named constant")
    pc.add_argument("name", choices=("c1", "c2", "H"))
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--zeros", required=True)

    pt = sub.add_parser("table1", help="naive vs accelerated c2 comparison")
    pt.add_argument("--max-n", type=int, default=None)
    pt.add_argument("--zeros", required=True)
    pt.add_argument("--out", default=None, help="also write CSV here")

    pb = sub.add_parser("compare-bounds", help="classical vs corrected bound at T")
    pb.add_argument("--phi", required=True)
    pb.add_argument("--T", type=float, required=True)
    return p


_COMMANDS = {
    "zeros": cmd_zeros,
    "estimate": cmd_estimate,
    "constants": cmd_constants,
    "table1": cmd_table1,
    "compare-bounds": cmd_compare_bounds,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.precision_bits is not None:
            set_precision_bits(args.precision_bits)
        args.config = RunConfig(
            precision_bits=precision_bits(),
            mode=args.mode,
            refine_tol=getattr(args, "tol", 1e-9),
            quad_tol_factor=args.quad_tol_factor,
            zero_source=getattr(args, "zeros", None),
            t_max=getattr(args, "t_max", None),
            n_zeros=getattr(args, "n", None),
        )
        return _COMMANDS[args.command](args)
    except (ZetasumError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
