"""The argument function theta(t) and the machinery hanging off it.

theta(t) := arg Gamma(1/4 + i t/2) - (t/2) log pi, taken along the continuous
branch with theta(0) = 0.  It carries the smooth part of the zero-counting
function: N(T) = theta(T)/pi + 1 + S(T), and Gram points are the solutions of
theta(g) = n pi.

Two independent evaluations are provided on purpose:

* theta_asymptotic: the divergent-series expansion truncated at order k, with
  the classical explicit remainder bound folded into the radius.  Cheap, and
  the one every caller uses for t >= 2 pi.
* theta_reference: complex log-Gamma built from scratch — shift the argument
  up by integer steps until Stirling's series applies, then sum it with its
  own explicit remainder.  Slower, shares no code or coefficients with the
  asymptotic path, and therefore usable as a cross-check down to t = 0.

The consistency of the two is asserted by tests and by gram_point, which
certifies its output bracket against theta_reference.

q_minus_s evaluates the series for Q(t) - S(t), the difference between the
counting remainder Q(T) = N(T) - L(T) and the argument term S(T); its
enclosure underlies the 1/(150 t) bound used by the estimator tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from .ball import (
    Ball,
    _fdown,
    _fup,
    _UP,
    ball_atan2,
    ball_log,
    ball_pi,
    ball_pow,
    ball_two_pi,
)
from .errors import DomainError

TWO_PI = 2.0 * math.pi

_MAX_ORDER = 10  # expansion order k; coefficient table is exact so the cap
                 # only reflects where the divergent series stops helping


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention; only even n used)."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    # sum_{j=0}^{m} C(m+1, j) B_j = 0
    acc = Fraction(0)
    for j in range(n):
        acc += math.comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


@lru_cache(maxsize=None)
def _series_coeff(j: int) -> Fraction:
    """Coefficient of t^(1-2j) in the expansion: (1 - 2^(1-2j)) |B_2j| / (4j(2j-1))."""
    scale = Fraction(2 ** (2 * j - 1) - 1, 2 ** (2 * j - 1))
    return scale * abs(bernoulli(2 * j)) / (4 * j * (2 * j - 1))


@dataclass(frozen=True)
class ThetaExpansion:
    """Truncation order and exact coefficient table for the theta series."""

    k: int
    coefficients: tuple[Fraction, ...]  # coefficient of t^(1-2j), j = 1..k

    @staticmethod
    def of_order(k: int) -> "ThetaExpansion":
        if not 1 <= k <= _MAX_ORDER:
            raise DomainError(f"theta.ThetaExpansion: order must be in 1..{_MAX_ORDER}, got {k}")
        return ThetaExpansion(k, tuple(_series_coeff(j) for j in range(1, k + 1)))

    def remainder_bound(self, t_lo: float) -> float:
        """Upper bound for the truncation remainder at any t >= t_lo >= 2 pi.

        The dropped remainder after k terms is below
        (1 - 2^(1-2k))^(-1) sqrt(pi k) * T_k(t) + e^(-pi t)/2, where T_k is
        the magnitude of the k-th series term; the prefactors cancel to
        sqrt(pi k) |B_2k| / (4k(2k-1) t^(2k-1)).
        """
        k = self.k
        b = abs(bernoulli(2 * k))
        lead = math.sqrt(math.pi * k) * float(b) / (4 * k * (2 * k - 1))
        return (lead / t_lo ** (2 * k - 1) + 0.5 * math.exp(-math.pi * min(t_lo, 700.0))) * _UP


def theta_asymptotic(t: Ball, k: int = 3) -> Ball:
    """Enclosure of theta(t) from the order-k expansion; valid for t >= 2 pi.

    midpoint series: (t/2)(log(t/2pi) - 1) - pi/8 + sum_j c_j t^(1-2j);
    the radius absorbs the explicit truncation remainder, so the result is a
    true enclosure despite the series being divergent.
    """
    exp_ = ThetaExpansion.of_order(k)
    t_lo = _fdown(t.mid) - t.rad
    if t_lo < TWO_PI * (1.0 - 1e-12):
        raise DomainError(f"theta.theta_asymptotic: need t >= 2*pi, got t ~ {float(t.mid):.6g}")

    two_pi = ball_two_pi()
    half_t = t * Fraction(1, 2)
    main = half_t * (ball_log(t / two_pi) - 1) - ball_pi() * Fraction(1, 8)

    inv_t = 1 / t
    inv_t2 = inv_t * inv_t
    power = inv_t  # t^(1-2j) starting at j=1
    series = Ball(mpfr(0))
    for c in exp_.coefficients:
        series = series + power * c
        power = power * inv_t2

    out = main + series
    return Ball(out.mid, (out.rad + exp_.remainder_bound(t_lo)) * _UP)


def q_minus_s(t: Ball, k: int = 3) -> Ball:
    """Enclosure of Q(t) - S(t) = (N - L)(t) - S(t) from the same series.

    Midpoint is (1/pi) sum_{j<=k} T_j(t); the radius carries the two explicit
    remainder pieces |B_2k| / (4 sqrt(pi k) (2k-1) t^(2k-1)) and
    e^(-pi t) / (2 pi).  At k = 3 the enclosure sits below 1/(150 t) for all
    t >= 2 pi, which is the form the estimator's constants consume.
    """
    exp_ = ThetaExpansion.of_order(k)
    t_lo = _fdown(t.mid) - t.rad
    if t_lo < TWO_PI * (1.0 - 1e-12):
        raise DomainError(f"theta.q_minus_s: need t >= 2*pi, got t ~ {float(t.mid):.6g}")

    inv_t = 1 / t
    inv_t2 = inv_t * inv_t
    power = inv_t
    series = Ball(mpfr(0))
    for c in exp_.coefficients:
        series = series + power * c
        power = power * inv_t2
    out = series / ball_pi()

    b = float(abs(bernoulli(2 * k)))
    tail = b / (4 * math.sqrt(math.pi * k) * (2 * k - 1) * t_lo ** (2 * k - 1))
    tail += math.exp(-math.pi * min(t_lo, 700.0)) / TWO_PI
    return Ball(out.mid, (out.rad + tail) * _UP)


# -- reference branch: shifted Stirling ---------------------------------------


def _stirling_params() -> tuple[float, int]:
    """(shift radius R0, series order K) sized for the working precision."""
    p = gmpy2.get_context().precision
    r0 = max(30.0, 0.40 * p)
    # terms fall roughly like B_{2k} 2^k / R0^(2k-1); walk until small enough
    target = 2.0 ** (-(p + 24))
    k = 6
    while k < 60:
        b = float(abs(bernoulli(2 * k + 2)))
        bound = b * 2.0 ** (k + 1) / ((2 * k + 1) * (2 * k + 2) * r0 ** (2 * k + 1))
        if bound < target:
            break
        k += 1
    return r0, k


def theta_reference(t: Ball) -> Ball:
    """Independent enclosure of theta(t), valid for all t >= 0.

    Writes theta = Im log Gamma(1/4 + it/2) - (t/2) log pi and evaluates the
    log-Gamma by upward recurrence (arg(z+j) steps are plain atan2 calls on
    the principal branch, which is the continuous one here since the real
    part stays positive) followed by Stirling's series with the explicit
    remainder |R_K| <= |B_{2K+2}| sec^(2K+2)(arg w / 2) / ((2K+1)(2K+2)|w|^(2K+1));
    on our vertical line sec(arg w / 2) <= sqrt 2.
    """
    if float(t.mid) < -t.rad:
        raise DomainError("theta.theta_reference: need t >= 0")

    y = t * Fraction(1, 2)
    r0, order = _stirling_params()

    y_f = float(t.mid) / 2.0
    if y_f >= r0:
        shift = 0
    else:
        shift = int(math.ceil(math.sqrt(max(0.0, r0 * r0 - y_f * y_f)) - 0.25)) + 1

    x = Ball.exact(Fraction(1, 4) + shift)  # Re(w) after the shift, exact

    # Im[(w - 1/2) log w] - Im w  of Stirling's main part
    arg_w = ball_atan2(y, x)
    mod2 = x * x + y * y
    log_mod = ball_log(mod2) * Fraction(1, 2)
    im_main = (x - Fraction(1, 2)) * arg_w + y * log_mod - y

    # sum_k B_2k / (2k(2k-1)) Im[w^(1-2k)]
    den = mod2
    inv_re = x / den
    inv_im = -y / den
    p_re, p_im = inv_re, inv_im  # w^(-1)
    inv2_re = inv_re * inv_re - inv_im * inv_im
    inv2_im = inv_re * inv_im * 2
    series = Ball(mpfr(0))
    for k in range(1, order + 1):
        c = bernoulli(2 * k) / (2 * k * (2 * k - 1))
        series = series + p_im * c
        if k < order:
            p_re, p_im = (
                p_re * inv2_re - p_im * inv2_im,
                p_re * inv2_im + p_im * inv2_re,
            )

    w_abs = math.sqrt(max(_fdown(x.mid) ** 2 + (_fdown(y.mid) - y.rad) ** 2, 1.0))
    b = float(abs(bernoulli(2 * order + 2)))
    stirling_rem = (
        b * 2.0 ** (order + 1) / ((2 * order + 1) * (2 * order + 2) * w_abs ** (2 * order + 1))
    )

    im_loggamma = im_main + series
    im_loggamma = Ball(im_loggamma.mid, (im_loggamma.rad + stirling_rem) * _UP)

    # undo the shift: Im log Gamma(z) = Im log Gamma(z + m) - sum arg(z + j)
    for j in range(shift):
        im_loggamma = im_loggamma - ball_atan2(y, Ball.exact(Fraction(1, 4) + j))

    return im_loggamma - y * ball_log(ball_pi())


# -- Gram points ---------------------------------------------------------------


def theta_mid_float(t: float, k: int = 3) -> float:
    """Plain-float theta midpoint (no enclosure); scanning helper."""
    main = 0.5 * t * (math.log(t / TWO_PI) - 1.0) - math.pi / 8.0
    acc = 0.0
    for j in range(1, k + 1):
        acc += float(_series_coeff(j)) / t ** (2 * j - 1)
    return main + acc


def theta_deriv_float(t: float) -> float:
    """d theta / dt to first correction order; Newton helper."""
    return 0.5 * math.log(t / TWO_PI) - float(_series_coeff(1)) / t**2


def gram_point(n: int) -> Ball:
    """Certified enclosure of the n-th Gram point (theta(g) = n pi, g >= 7).

    Bisection in float brackets the root, Newton at working precision tightens
    it, and the returned radius is certified by sign checks of
    theta_reference - n pi at the bracket ends.
    """
    if n < -1:
        raise DomainError(f"theta.gram_point: need n >= -1, got {n}")
    target_f = n * math.pi

    lo, hi = 7.0, 10.0
    while theta_mid_float(hi) < target_f:
        hi *= 1.5
    for _ in range(70):
        mid = 0.5 * (lo + hi)
        if theta_mid_float(mid) < target_f:
            lo = mid
        else:
            hi = mid

    # Newton at working precision on the order-5 expansion midpoint
    g = mpfr(0.5 * (lo + hi))
    pi_b = ball_pi()
    target = pi_b * n
    step = mpfr(1)
    for _ in range(6):
        th = theta_asymptotic(Ball(g), k=5)
        step = (th.mid - target.mid) / mpfr(theta_deriv_float(float(g)))
        g = g - step
        if abs(step) < abs(g) * mpfr(2) ** (-gmpy2.get_context().precision):
            break

    delta = max(abs(float(step)) * 4.0, float(abs(g)) * 2.0 ** (-gmpy2.get_context().precision + 8), 1e-40)
    for _ in range(40):
        lo_ball = theta_reference(Ball(g - mpfr(delta)))
        hi_ball = theta_reference(Ball(g + mpfr(delta)))
        if lo_ball.exact_hi() < target.exact_lo() and target.exact_hi() < hi_ball.exact_lo():
            return Ball(g, delta * _UP)
        delta *= 4.0
    raise DomainError(f"theta.gram_point: could not certify bracket for n={n}")
