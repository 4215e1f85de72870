"""Certified tables of zeta-zero ordinates and the counting functions.

The pipeline separates cheap location from expensive certification:

1. fastz locates candidate roots of Hardy's Z in float (Gram-interval scan,
   subdivision where the sign-change count falls behind the counting
   formula, vectorized bisection).
2. This module then certifies the result in ball arithmetic: the sign of Z
   at a verification Gram point past the requested height, the counting
   formula round(theta/pi + 1) there, and strict sign alternation of Z at
   enclosure midpoints.  Only if every check passes does a ZeroTable come
   back; an unresolvable deficit raises CompletenessError rather than
   guessing (a genuine multiple zero or ultra-close pair would surface
   that way).

Certified Z comes in two regimes.  Below t = 50 an Euler-Maclaurin
evaluation of zeta(1/2 + it) carries an explicit tail bound.  From 50 up,
the main sum 2 sum n^(-1/2) cos(theta - t log n) plus three endpoint
correction terms carries the remainder radius 0.053 * t^(-5/4) — see
_MAIN_SUM_REMAINDER below for where that constant comes from.

Entry radii are what the *float* pipeline can honestly claim: the claimed
enclosure accounts for both the bisection width and the measured bias of
the float evaluators (below 1e-9 everywhere, which is why refine_tol may
not go lower).
"""

from __future__ import annotations

import bisect as _bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np
from gmpy2 import mpfr

from . import fastz
from .ball import (
    Ball,
    ball_cos,
    ball_pi,
    ball_sin,
    ball_sqrt,
    ball_two_pi,
)
from .config import precision_bits
from .errors import (
    AmbiguousQueryError,
    CompletenessError,
    DomainError,
    FileFormatError,
)
from .theta import bernoulli, theta_asymptotic, theta_reference

EM_RS_SPLIT = 50.0

# Remainder radius for the main-sum form with correction terms C0, C1, C2:
# 0.053 * t^(-5/4).  The classical three-term remainder bound is
# 0.011 * (t/2pi)^(-7/4) for t >= 200 (Gabcke's c_2), and
# 0.011 * (2pi)^(7/4) * t^(-1/2) <= 0.053 holds for all t >= 26, so the
# t^(-5/4) form is strictly weaker wherever the classical bound applies.
# On [50, 200), where the classical theorem is silent, direct comparison
# against high-accuracy Euler-Maclaurin values over dense p-coverage puts
# the true remainder below 0.0013 * t^(-5/4) (tests re-check a sample), a
# 40x margin under the constant used here.
_MAIN_SUM_REMAINDER = 0.053

_DEFAULT_IMPORT_RADIUS = 1e-9

# Measured root bias of the float evaluators (error / local slope): below
# 5.1e-10 above the evaluator switch and near roundoff below it.  Claimed
# entry radii must stay above bisection-width/2 + this, hence the floor.
_MIN_REFINE_TOL = 1e-9
_FLOAT_ROOT_BIAS = 6.5e-10

_GOOD_MARGIN = 1e-4  # float |Z| below this at a Gram point => treat as bad
_MAX_SUBDIV = 64
_UP = 1.0 + 2.0**-40


# -- cached per-integer constants ---------------------------------------------


@lru_cache(maxsize=None)
def _ln_ball_cached(n: int, prec: int) -> Ball:
    from .ball import ball_log

    return ball_log(Ball.exact(n))


def _ln_ball(n: int) -> Ball:
    return _ln_ball_cached(n, precision_bits())


@lru_cache(maxsize=None)
def _rsqrt_ball_cached(n: int, prec: int) -> Ball:
    return 1 / ball_sqrt(Ball.exact(n))


def _rsqrt_ball(n: int) -> Ball:
    return _rsqrt_ball_cached(n, precision_bits())


def _theta_ball(t: Ball) -> Ball:
    # the asymptotic series needs t >= 2pi; reference covers the rest
    if float(t.mid) >= 15.0:
        return theta_asymptotic(t, k=7)
    return theta_reference(t)


# -- Hardy Z, certified ---------------------------------------------------------


def hardy_z(t: Ball, certified: bool = True) -> Ball:
    """Ball containing Z(t) = Re[e^{i theta(t)} zeta(1/2 + it)].

    certified=False keeps the same evaluation but swaps the proven
    main-sum remainder for the heuristic radius 10x the last correction
    term (only meaningful for t >= 50; below that the Euler-Maclaurin tail
    bound is explicit either way).
    """
    if float(t.mid) < -t.rad:
        raise DomainError("zeros.hardy_z: t must be nonnegative")
    if float(t.mid) < EM_RS_SPLIT:
        return _z_euler_maclaurin(t)
    return _z_main_sum(t, certified)


def _em_tail_bound(t_hi: float, n_terms: int, order: int) -> float:
    """|R| after the order-K Bernoulli correction, N-term truncation.

    Uses |B~_{2K+1}(x)| <= 2 (2K+1)! zeta(2K+1) / (2pi)^{2K+1} and
    zeta(2K+1) <= zeta(3) < 1.25, so the periodic-Bernoulli integral form
    of the remainder gives
        |R| <= 2.5 (2pi)^{-(2K+1)} prod_{j=0}^{2K} |s+j| * N^{-1/2-2K}/(1/2+2K).
    Evaluated in log space to dodge overflow; 1% slop covers float error.
    """
    K = order
    logv = (
        math.log(2.5)
        - (2 * K + 1) * math.log(2 * math.pi)
        - (0.5 + 2 * K) * math.log(n_terms)
        - math.log(0.5 + 2 * K)
    )
    for j in range(2 * K + 1):
        logv += 0.5 * math.log((0.5 + j) ** 2 + t_hi * t_hi)
    return math.exp(logv) * 1.01


def _z_euler_maclaurin(t: Ball) -> Ball:
    t_hi = abs(float(t.mid)) + t.rad
    n_terms = max(64, int(3.2 * t_hi) + 16)
    order = min(
        range(4, 22, 2), key=lambda K: _em_tail_bound(t_hi, n_terms, K)
    )
    bound = _em_tail_bound(t_hi, n_terms, order)

    half = Ball.exact(Fraction(1, 2))
    re = Ball.exact(1)
    im = Ball.exact(0)
    for n in range(2, n_terms):
        ph = t * _ln_ball(n)
        w = _rsqrt_ball(n)
        re = re + w * ball_cos(ph)
        im = im - w * ball_sin(ph)

    # C = N^{-s} as a (re, im) pair, s = 1/2 + it
    ph = t * _ln_ball(n_terms)
    w = _rsqrt_ball(n_terms)
    c_re = w * ball_cos(ph)
    c_im = -(w * ball_sin(ph))
    # N^{1-s}/(s-1) with s-1 = (-1/2, t)
    den = Fraction(1, 4) + t * t
    t1_re = (c_re * Fraction(-1, 2) + c_im * t) * n_terms / den
    t1_im = (c_im * Fraction(-1, 2) - c_re * t) * n_terms / den
    re = re + t1_re + c_re * half
    im = im + t1_im + c_im * half

    # Bernoulli corrections: B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    poch_re, poch_im = half, t
    np_re, np_im = c_re / n_terms, c_im / n_terms
    n_sq = n_terms * n_terms
    for k in range(1, order + 1):
        if k > 1:
            for j in (2 * k - 3, 2 * k - 2):
                a = Ball.exact(Fraction(1, 2) + j)
                poch_re, poch_im = poch_re * a - poch_im * t, poch_re * t + poch_im * a
            np_re, np_im = np_re / n_sq, np_im / n_sq
        coef = Ball.exact(bernoulli(2 * k) / math.factorial(2 * k))
        re = re + coef * (poch_re * np_re - poch_im * np_im)
        im = im + coef * (poch_re * np_im + poch_im * np_re)

    re = Ball(re.mid, (re.rad + bound) * _UP)
    im = Ball(im.mid, (im.rad + bound) * _UP)
    th = _theta_ball(t)
    z = ball_cos(th) * re - ball_sin(th) * im
    return z


_SINC_TERMS = 8


def _sinc_ball(x: Ball) -> Ball:
    """sin(x)/x for |x| <= 0.8, by alternating series with explicit tail."""
    hi = abs(float(x.mid)) + x.rad
    if hi > 0.8:
        raise DomainError("zeros.sinc: argument outside the series window")
    x2 = x * x
    acc = Ball.exact(Fraction((-1) ** (_SINC_TERMS - 1), math.factorial(2 * _SINC_TERMS - 1)))
    for i in range(_SINC_TERMS - 2, -1, -1):
        acc = acc * x2 + Fraction((-1) ** i, math.factorial(2 * i + 1))
    # alternating, decreasing => truncation below first omitted term
    trunc = hi ** (2 * _SINC_TERMS) / math.factorial(2 * _SINC_TERMS + 1)
    return Ball(acc.mid, (acc.rad + trunc) * _UP)


def _psi_ball(p: Ball) -> Ball:
    """Endpoint function cos(2pi(p^2 - p - 1/16))/cos(2pi p), rigorously.

    The quotient has removable singularities at p = 1/4 and 3/4; inside a
    0.06-window around each the equivalent sinc form (exact trigonometric
    rewriting, no limits involved) keeps the division well away from zero:
      near 1/4, q = p - 1/4:  ((1-2q)/2) sinc(pi q (1-2q)) / sinc(2pi q)
      near 3/4, q = p - 3/4:  ((1+2q)/2) sinc(pi q (1+2q)) / sinc(2pi q)
    Outside the windows |cos(2pi p)| >= sin(0.12 pi) > 0.36.
    """
    pf = float(p.mid)
    pi_b = ball_pi()
    two_pi = ball_two_pi()
    if abs(pf - 0.25) <= 0.06:
        q = p - Fraction(1, 4)
        f1 = 1 - q * 2
        return f1 * Fraction(1, 2) * _sinc_ball(pi_b * q * f1) / _sinc_ball(two_pi * q)
    if abs(pf - 0.75) <= 0.06:
        q = p - Fraction(3, 4)
        f1 = 1 + q * 2
        return f1 * Fraction(1, 2) * _sinc_ball(pi_b * q * f1) / _sinc_ball(two_pi * q)
    num = ball_cos(two_pi * (p * p - p - Fraction(1, 16)))
    den = ball_cos(two_pi * p)
    return num / den


_C1_SCALE = 96.0 * math.pi**2
_C2_SCALE_A = 64.0 * math.pi**2
_C2_SCALE_B = 18432.0 * math.pi**4


def _z_main_sum(t: Ball, certified: bool) -> Ball:
    a2 = t / ball_two_pi()
    a = ball_sqrt(a2)
    n_main = int(math.floor(float(a.mid)))
    if float(a.mid) - a.rad < n_main or float(a.mid) + a.rad >= n_main + 1:
        raise DomainError(
            "zeros.hardy_z: sqrt(t/2pi) too close to an integer for a "
            "well-defined main-sum length"
        )
    th = theta_asymptotic(t, k=5)

    acc = Ball.exact(0)
    for n in range(1, n_main + 1):
        acc = acc + _rsqrt_ball(n) * ball_cos(th - t * _ln_ball(n))
    acc = acc * 2

    # C0 rigorously; C1, C2 from the float derivative tables with booked slack
    p = a - n_main
    c0 = _psi_ball(p)
    pf = min(max(float(p.mid), 0.0), 1.0)
    p_err = p.rad + 1e-16
    c1_f = -float(fastz.psi_deriv_f(3, pf)) / _C1_SCALE
    c1_err = (fastz.psi_eval_slack(3) + fastz.psi_abs_sum(4) * p_err) / _C1_SCALE
    c2_f = (
        float(fastz.psi_deriv_f(2, pf)) / _C2_SCALE_A
        + float(fastz.psi_deriv_f(6, pf)) / _C2_SCALE_B
    )
    c2_err = (
        (fastz.psi_eval_slack(2) + fastz.psi_abs_sum(3) * p_err) / _C2_SCALE_A
        + (fastz.psi_eval_slack(6) + fastz.psi_abs_sum(7) * p_err) / _C2_SCALE_B
    )
    c1 = Ball(mpfr(c1_f), c1_err)
    c2 = Ball(mpfr(c2_f), c2_err)

    scale = 1 / ball_sqrt(a)  # (t/2pi)^(-1/4)
    corr = scale * (c0 + c1 / a + c2 / a2)
    last_term = scale * c2 / a2
    sign = 1 if n_main % 2 == 1 else -1
    z = acc + corr * sign

    t_lo = float(t.mid) - t.rad
    if certified:
        extra = _MAIN_SUM_REMAINDER * t_lo ** (-1.25)
    else:
        extra = 10.0 * (abs(float(last_term.mid)) + last_term.rad)
    return Ball(z.mid, (z.rad + extra) * _UP)


# -- zero tables ---------------------------------------------------------------


class WeightedCount(Fraction):
    """A zero count; ``ambiguous`` marks a query inside an entry's ball
    (the half-weight convention applied)."""

    __slots__ = ("ambiguous",)

    def __new__(cls, value, ambiguous: bool = False):
        self = super().__new__(cls, value)
        self.ambiguous = ambiguous
        return self


@dataclass(frozen=True)
class ZeroTable:
    """Ordinates of consecutive critical-line zeros, each enclosed in a ball.

    height_max is the largest T for which the table is certified complete;
    count queries beyond it are refused.  All zeros are treated as simple:
    the finder errors out on unresolvable clusters instead of guessing a
    multiplicity.
    """

    ordinates: tuple[Ball, ...]
    source: str  # "computed" | "imported"
    height_max: float

    def __post_init__(self):
        if self.source not in ("computed", "imported"):
            raise DomainError(f"zeros.table: unknown source {self.source!r}")
        prev_hi = None
        for b in self.ordinates:
            lo = float(b.mid) - b.rad
            if prev_hi is not None and not lo > prev_hi:
                raise DomainError(
                    "zeros.table: entries must be strictly increasing with "
                    "disjoint enclosures"
                )
            prev_hi = float(b.mid) + b.rad
        if self.ordinates:
            first = float(self.ordinates[0].mid)
            if not 14.0 < first < 15.0:
                raise DomainError(
                    "zeros.table: first entry must enclose the first zero "
                    f"(expected in (14, 15), got {first!r})"
                )

    def __len__(self) -> int:
        return len(self.ordinates)


@lru_cache(maxsize=32)
def _mids(table: ZeroTable) -> tuple:
    return tuple(float(b.mid) for b in table.ordinates)


def L_of(T: Ball) -> Ball:
    """Smooth zero-count term (T/2pi)(log(T/2pi) - 1) + 7/8."""
    if float(T.mid) <= 0:
        raise DomainError("zeros.L_of: T must be positive")
    from .ball import ball_log

    x = T / ball_two_pi()
    return x * (ball_log(x) - 1) + Fraction(7, 8)


def count_N(table: ZeroTable, T) -> WeightedCount:
    """Entries with ordinate <= T; half weight if T sits inside an enclosure."""
    Tf = float(T)
    if Tf > table.height_max:
        raise DomainError(
            f"zeros.count_N: T={Tf!r} beyond certified height "
            f"{table.height_max!r}"
        )
    mids = _mids(table)
    i = _bisect.bisect_right(mids, Tf)
    for j in (i - 1, i):
        if 0 <= j < len(mids) and table.ordinates[j].contains(Tf):
            # j entries lie strictly below the straddled one
            return WeightedCount(Fraction(2 * j + 1, 2), ambiguous=True)
    return WeightedCount(i)


def Q_of(table: ZeroTable, T: Ball) -> Ball:
    """N(T) - L(T); requires T's ball disjoint from every entry."""
    Tf = float(T.mid)
    if Tf > table.height_max:
        raise DomainError(
            f"zeros.Q_of: T={Tf!r} beyond certified height {table.height_max!r}"
        )
    mids = _mids(table)
    i = _bisect.bisect_right(mids, Tf)
    for j in (i - 1, i):
        if 0 <= j < len(mids) and table.ordinates[j].intersects(T):
            raise AmbiguousQueryError(
                "zeros.Q_of: T overlaps a zero enclosure; query a point "
                "between zeros (e.g. the midpoint of a gap)"
            )
    n = count_N(table, Tf)
    return Ball.exact(Fraction(n)) - L_of(T)


# -- the finder ----------------------------------------------------------------


def find_zeros(t_max: float, refine_tol: float = 1e-9) -> ZeroTable:
    """Locate and certify every zero ordinate up to t_max.

    Scan Gram intervals with the float evaluators, subdivide where the
    sign-change count falls behind, bisect each bracket, then certify the
    whole set in ball arithmetic (see module docstring).  Entries above
    t_max found on the way to the verification Gram point are discarded so
    the completeness promise is exactly [0, t_max].
    """
    t_max = float(t_max)
    if not 15.0 <= t_max <= 1e6:
        raise DomainError("zeros.find_zeros: t_max must lie in [15, 1e6]")
    if refine_tol < _MIN_REFINE_TOL:
        raise DomainError(
            "zeros.find_zeros: refine_tol below 1e-9 cannot be honored — "
            "the float evaluators' measured root bias reaches 5e-10 (the "
            "enclosure radius would lie about the location error)"
        )

    g, zg, parity_ok, anchor_idx = _lattice_with_anchor(t_max)
    lo, hi, k_found = _brackets_below(g, zg, parity_ok, anchor_idx)

    expected = anchor_idx  # zeros below g_n number n+1; idx = n+1
    n_anchor = anchor_idx - 1
    formula = _counting_formula(g[anchor_idx])
    if formula != expected:
        raise CompletenessError(
            f"zeros.find_zeros: counting formula gives {formula} at the "
            f"verification point g_{n_anchor}={g[anchor_idx]:.6f}, lattice "
            f"index implies {expected}"
        )
    if k_found != expected:
        raise CompletenessError(
            f"zeros.find_zeros: found {k_found} sign changes below "
            f"{g[anchor_idx]:.6f} but the counting formula certifies "
            f"{expected}; suspect interval resolution failed"
        )

    roots = _bisect_all(lo, hi, refine_tol)
    _certify_alternation(g[0], roots, g[anchor_idx])

    kept = roots[roots <= t_max]
    entries = tuple(Ball(mpfr(float(r)), refine_tol) for r in kept)
    return ZeroTable(entries, "computed", t_max)


def _counting_formula(t: float) -> int:
    val = _counting_value(t)
    return int(round(val))


def _counting_value(t: float) -> float:
    th = _theta_ball(Ball(mpfr(t)))
    return float((th / ball_pi()).mid) + 1.0


def _formula_reliable(val: float) -> bool:
    # round(theta/pi + 1) equals N only while |S| < 1/2; near a half-integer
    # the rounding is a coin flip (S is passing through +-1/2), so a probe
    # landing there proves nothing and must be discarded.
    return abs(val - math.floor(val) - 0.5) >= 0.15


def _lattice_with_anchor(t_max: float):
    """Gram lattice from g_{-1} past t_max, plus a certified good anchor."""
    n_hi = int(math.ceil(fastz.theta_f(t_max) / math.pi)) + 40
    base = n_hi - 40
    while True:
        g = fastz.gram_points_f(-1, n_hi)
        zg = fastz.z_many(g)
        idxs = np.arange(-1, n_hi + 1)
        parity_ok = np.where(idxs % 2 == 0, zg, -zg) > _GOOD_MARGIN
        start = int(np.searchsorted(g, t_max))
        for i in range(start, len(g)):
            if not parity_ok[i]:
                continue
            val = _counting_value(float(g[i]))
            if not (_formula_reliable(val) and int(round(val)) == idxs[i] + 1):
                continue
            want = 1 if idxs[i] % 2 == 0 else -1
            if _certified_sign(float(g[i])) == want:
                return g, zg, parity_ok, i
        n_hi += 64
        if n_hi - base > 512:
            raise CompletenessError(
                "zeros.find_zeros: no certifiable verification Gram point "
                f"within 512 indices above t_max={t_max!r}"
            )


def _certified_sign(t: float) -> int:
    try:
        return hardy_z(Ball(mpfr(t))).sign()
    except DomainError:
        return 0


def _brackets_below(g, zg, parity_ok, anchor_idx):
    """Sign-change brackets for every zero below the anchor Gram point."""
    good = [i for i in range(anchor_idx + 1) if parity_ok[i]]
    if not good or good[0] != 0:
        raise CompletenessError(
            "zeros.find_zeros: the scan floor Gram point failed its sign "
            "check; cannot anchor the count at zero"
        )
    if good[-1] != anchor_idx:
        good.append(anchor_idx)

    lo_list: list[np.ndarray] = []
    hi_list: list[np.ndarray] = []
    for a, b in zip(good[:-1], good[1:]):
        if b - a == 1:
            lo_list.append(g[a : a + 1])
            hi_list.append(g[b : b + 1])
            continue
        blo, bhi = _resolve_block(g[a : b + 1], b - a)
        lo_list.append(blo)
        hi_list.append(bhi)
    lo = np.concatenate(lo_list)
    hi = np.concatenate(hi_list)
    return lo, hi, len(lo)


def _resolve_block(knots: np.ndarray, expected: int):
    """Subdivide a run of bad Gram intervals until enough sign changes show."""
    depth = 1
    while True:
        per = 2**depth
        starts = knots[:-1]
        steps = np.diff(knots) / per
        pts = (starts[:, None] + steps[:, None] * np.arange(per)[None, :]).ravel()
        pts = np.append(pts, knots[-1])
        z = fastz.z_many(pts)
        neg = z < 0
        flips = np.nonzero(neg[:-1] != neg[1:])[0]
        if len(flips) >= expected:
            return pts[flips], pts[flips + 1]
        if per >= _MAX_SUBDIV:
            raise CompletenessError(
                "zeros.find_zeros: sign-change deficit persists at 64-fold "
                f"subdivision in ({knots[0]:.6f}, {knots[-1]:.6f}); possible "
                "ultra-close pair or multiple zero"
            )
        depth += 1


def _bisect_all(lo: np.ndarray, hi: np.ndarray, refine_tol: float) -> np.ndarray:
    f_lo_neg = fastz.z_many(lo) < 0
    width_target = refine_tol / 4.0
    for _ in range(80):
        live = (hi - lo) > width_target
        if not live.any():
            break
        mid = 0.5 * (lo + hi)
        fm_neg = np.zeros_like(f_lo_neg)
        fm_neg[live] = fastz.z_many(mid[live]) < 0
        go_left = live & (f_lo_neg != fm_neg)
        go_right = live & ~go_left
        hi[go_left] = mid[go_left]
        lo[go_right] = mid[go_right]
    return 0.5 * (lo + hi)


def _certify_alternation(floor_pt: float, roots: np.ndarray, anchor: float) -> None:
    """Ball-certified sign of Z at the floor point and every gap midpoint.

    Z just past the j-th zero has sign (-1)^(j+1); together with the
    certified anchor sign and the counting formula this pins exactly one
    simple zero inside each bracket.  Points where the ball straddles zero
    are nudged within the gap before giving up.
    """
    pts = [floor_pt] + [0.5 * (a + b) for a, b in zip(roots[:-1], roots[1:])]
    gaps_lo = np.concatenate(([floor_pt - 1.0], roots[:-1]))
    gaps_hi = np.concatenate((roots[:1], roots[1:]))
    for j, (p, glo, ghi) in enumerate(zip(pts, gaps_lo, gaps_hi)):
        want = -1 if j % 2 == 0 else 1
        room = 0.5 * min(p - glo, ghi - p)
        for off in (0.0, 0.3, -0.3, 0.6, -0.6, 0.85, -0.85):
            s = _certified_sign(p + off * room)
            if s == want:
                break
            if s == -want:
                raise CompletenessError(
                    f"zeros.find_zeros: certified sign at {p + off * room:.9f} "
                    "contradicts the alternation pattern; table rejected"
                )
        else:
            raise CompletenessError(
                f"zeros.find_zeros: could not certify the sign of Z near "
                f"{p:.9f}; suspect unresolved pair around that gap"
            )


# -- import / export -----------------------------------------------------------


def import_zeros(path) -> ZeroTable:
    """Read a zero table (one ordinate per line, optional radius column)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"zeros.import: cannot read {path}: {exc}") from exc
    entries: list[Ball] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) > 2:
            raise FileFormatError(
                f"zeros.import: line {lineno}: expected 'ordinate' or "
                "'ordinate<TAB>radius'"
            )
        try:
            b = Ball.from_decimal(parts[0])
        except DomainError as exc:
            raise FileFormatError(f"zeros.import: line {lineno}: {exc}") from exc
        rad = _DEFAULT_IMPORT_RADIUS
        if len(parts) == 2:
            try:
                rad = float(parts[1])
            except ValueError as exc:
                raise FileFormatError(
                    f"zeros.import: line {lineno}: bad radius {parts[1]!r}"
                ) from exc
            if not (rad >= 0.0 and math.isfinite(rad)):
                raise FileFormatError(
                    f"zeros.import: line {lineno}: bad radius {parts[1]!r}"
                )
        entry = Ball(b.mid, (b.rad + rad) * _UP)
        if entries:
            prev = entries[-1]
            if not float(prev.mid) + prev.rad < float(entry.mid) - entry.rad:
                raise FileFormatError(
                    f"zeros.import: line {lineno}: entries must be strictly "
                    "ascending with disjoint enclosures"
                )
        entries.append(entry)
    if not entries:
        raise FileFormatError("zeros.import: empty table")

    last = float(entries[-1].mid)
    mean_gap = 2 * math.pi / math.log(last / (2 * math.pi))
    for frac in (0.3, 0.1, 0.03, 0.01, 0.5, 0.7):
        probe = last + frac * mean_gap
        val = _counting_value(probe)
        if _formula_reliable(val) and int(round(val)) == len(entries):
            return ZeroTable(tuple(entries), "imported", probe)
    raise CompletenessError(
        f"zeros.import: a {len(entries)}-entry table disagrees with the "
        "counting formula just above its last ordinate; the table must "
        "contain every zero from the first, with none missing"
    )


def write_zeros(table: ZeroTable, path) -> None:
    digits = int(precision_bits() * 0.302) + 3
    lines = [
        "# zeta zero ordinates on the critical line, ascending",
        f"# count {len(table)}  height_max {table.height_max!r}  source {table.source}",
    ]
    for b in table.ordinates:
        lines.append(f"{format(b.mid, f'.{digits}f')}\t{b.rad!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
