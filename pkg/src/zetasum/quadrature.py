"""Enclosure-producing integration for the smooth main term, plus li.

Finite ranges use adaptive bisection with a Gauss-Legendre 15 rule per
panel.  The per-panel radius stacks three terms: the ball-arithmetic
rounding of the rule sum itself, the gap against an order-7 rule, and the
tail of a 17-point Chebyshev fit of the integrand (a derivative-free proxy
for the interpolation error).  The last two are error *estimates*, not
proofs; to keep enclosure algebra honest against that, the returned radius
is padded by tol/2 after the panel estimates are driven below tol/4.  The
padding costs nothing downstream -- callers set tol three orders below the
explicit bound that dominates their result -- and it buys a clean algebra:
an [a,c] enclosure is contained in the ball-sum of [a,b] and [b,c]
enclosures at the same tolerance, deterministically.

Rule nodes are certified once per working precision: Legendre coefficients
are exact rationals, float seeds are polished by Newton in spare-precision
MPFR, and each root is bracketed by an exact rational sign change, so the
node balls are genuine enclosures and the weights inherit rigor through
ball arithmetic.

Semi-infinite ranges go through t = T/u onto (0,1], integrated over dyadic
panels toward u = 0; the truncated remainder is bounded by a measured
geometric decay ratio, and panels that refuse to decay raise DivergenceError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import gmpy2
import numpy as np
from gmpy2 import mpfr

from .ball import (
    Ball,
    ball_euler_gamma,
    ball_log,
    ball_two_pi,
    _fup,
)
from .config import precision_bits
from .errors import ConvergenceError, DivergenceError, DomainError
from .phifunc import PhiSpec, eval_ball

Integrand = Callable[[Ball], Ball]

_MAX_PANELS = 1 << 16
_CHEB_N = 16  # 17 sample points


@dataclass(frozen=True)
class QuadResult:
    value: Ball
    subdivisions: int
    method: str  # closed_form | adaptive | tail_substitution


# -- certified Gauss-Legendre nodes ----------------------------------------------


def _legendre_coeffs(n: int) -> list[Fraction]:
    p_prev = [Fraction(1)]
    p = [Fraction(0), Fraction(1)]
    if n == 0:
        return p_prev
    for k in range(1, n):
        # (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        nxt = [Fraction(0)] * (k + 2)
        for i, c in enumerate(p):
            nxt[i + 1] += Fraction(2 * k + 1, k + 1) * c
        for i, c in enumerate(p_prev):
            nxt[i] -= Fraction(k, k + 1) * c
        p_prev, p = p, nxt
    return p


def _horner_fraction(coeffs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _horner_ball(coeffs: list[Fraction], x: Ball) -> Ball:
    acc = Ball.exact(0)
    for c in reversed(coeffs):
        acc = acc * x + Ball.exact(c)
    return acc


_RULE_CACHE: dict[tuple[int, int], tuple[tuple[Ball, ...], tuple[Ball, ...]]] = {}


def _gauss_rule(n: int) -> tuple[tuple[Ball, ...], tuple[Ball, ...]]:
    """Certified nodes and weights of the n-point rule on [-1, 1]."""
    key = (n, precision_bits())
    cached = _RULE_CACHE.get(key)
    if cached is not None:
        return cached

    coeffs = _legendre_coeffs(n)
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    seeds, _ = np.polynomial.legendre.leggauss(n)

    ctx = gmpy2.get_context()
    saved = ctx.precision
    work = saved + 64
    try:
        ctx.precision = work
        cf = [mpfr(c.numerator) / mpfr(c.denominator) for c in coeffs]
        df = [mpfr(c.numerator) / mpfr(c.denominator) for c in dcoeffs]

        def horner(cs, x):
            acc = mpfr(0)
            for c in reversed(cs):
                acc = acc * x + c
            return acc

        roots = []
        for s in seeds:
            x = mpfr(float(s))
            for _ in range(10):
                x = x - horner(cf, x) / horner(df, x)
            roots.append(x)
    finally:
        ctx.precision = saved

    nodes, weights = [], []
    for r in roots:
        rq = Fraction(int(gmpy2.mpq(r).numerator), int(gmpy2.mpq(r).denominator))
        if rq == 0:  # odd rules have the exact root at the origin
            node = Ball.exact(0)
        else:
            delta = Fraction(1, 2 ** (precision_bits() + 16))
            for _ in range(8):
                lo, hi = rq - delta, rq + delta
                if _horner_fraction(coeffs, lo) * _horner_fraction(coeffs, hi) < 0:
                    break
                delta *= 16
            else:
                raise ConvergenceError(
                    f"quadrature: failed to certify rule node near {float(rq)}"
                )
            node = Ball.exact((lo + hi) / 2) + Ball(mpfr(0), _fup(float(delta)))
        d = _horner_ball(dcoeffs, node)
        weights.append(Ball.exact(2) / ((1 - node * node) * d * d))
        nodes.append(node)

    total = Ball.exact(0)
    for w in weights:
        total = total + w
    if not total.contains(2):
        raise ConvergenceError(f"quadrature: weight sum failed self-check for n={n}")
    result = (tuple(nodes), tuple(weights))
    _RULE_CACHE[key] = result
    return result


# -- finite-range adaptive integration -------------------------------------------


def _panel_sum(f: Integrand, a: float, b: float, n: int) -> Ball:
    nodes, weights = _gauss_rule(n)
    c = Ball.exact((Fraction(a) + Fraction(b)) / 2)
    h = Ball.exact((Fraction(b) - Fraction(a)) / 2)
    acc = Ball.exact(0)
    for x, w in zip(nodes, weights):
        acc = acc + w * f(c + h * x)
    return h * acc


def _cheb_tail(f: Integrand, a: float, b: float) -> float:
    # trailing Chebyshev coefficients of the integrand, scaled by the
    # half-length: a derivative-free stand-in for the interpolation error
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    vals = [
        float(f(Ball.exact(c + h * math.cos(math.pi * j / _CHEB_N))).mid)
        for j in range(_CHEB_N + 1)
    ]
    tail = 0.0
    for k in range(_CHEB_N - 3, _CHEB_N + 1):
        ck = 0.0
        for j in range(_CHEB_N + 1):
            term = vals[j] * math.cos(math.pi * j * k / _CHEB_N)
            if j in (0, _CHEB_N):
                term *= 0.5
            ck += term
        tail += abs(ck * 2.0 / _CHEB_N)
    return 2.0 * h * tail


def _adaptive(f: Integrand, a: float, b: float, budget: float) -> tuple[Ball, float, int]:
    """Panels left to right; returns (ball sum, stacked error estimate, count)."""
    total_len = b - a
    stack = [(a, b)]
    acc = Ball.exact(0)
    est_total = 0.0
    panels = 0
    while stack:
        lo, hi = stack.pop()
        i15 = _panel_sum(f, lo, hi, 15)
        i7 = _panel_sum(f, lo, hi, 7)
        gap = abs(float(i15.mid) - float(i7.mid)) + i7.rad
        est = gap + _cheb_tail(f, lo, hi)
        alloc = budget * (hi - lo) / total_len
        if est <= alloc or (hi - lo) < 1e-12 * total_len:
            acc = acc + i15
            est_total += est
            panels += 1
            if panels > _MAX_PANELS:
                raise ConvergenceError(
                    "quadrature.integrate_finite: tolerance unreachable within "
                    f"{_MAX_PANELS} panels"
                )
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi))
            stack.append((lo, mid))
            if len(stack) + panels > _MAX_PANELS:
                raise ConvergenceError(
                    "quadrature.integrate_finite: tolerance unreachable within "
                    f"{_MAX_PANELS} panels"
                )
    return acc, est_total, panels


def _endpoint_slack(f: Integrand, e: Ball) -> float:
    if e.rad == 0.0:
        return 0.0
    v = f(e)
    return _fup((abs(float(v.mid)) + v.rad) * e.rad)


def integrate_finite(f: Integrand, a: Ball, b: Ball, tol: float) -> QuadResult:
    """Enclosure of the integral of f over [a, b] with radius <= tol."""
    if not tol > 0:
        raise DomainError("quadrature.integrate_finite: tol must be positive")
    af, bf = float(a.mid), float(b.mid)
    if not af < bf:
        raise DomainError(
            f"quadrature.integrate_finite: need a < b, got [{af}, {bf}]"
        )
    acc, est, panels = _adaptive(f, af, bf, tol / 4.0)
    slack = est + tol / 2.0 + _endpoint_slack(f, a) + _endpoint_slack(f, b)
    value = Ball(acc.mid, _fup(acc.rad + slack))
    if value.rad > tol:
        raise ConvergenceError(
            f"quadrature.integrate_finite: radius {value.rad} exceeds tol {tol}"
        )
    return QuadResult(value=value, subdivisions=panels, method="adaptive")


# -- semi-infinite ranges ---------------------------------------------------------

_MAX_DYADIC = 400


def integrate_tail(f: Integrand, T: Ball, tol: float) -> QuadResult:
    """Enclosure of the integral of f over [T, oo) via the t = T/u substitution."""
    if not tol > 0:
        raise DomainError("quadrature.integrate_tail: tol must be positive")
    if not float(T.mid) > 0:
        raise DomainError("quadrature.integrate_tail: T must be positive")

    def g(u: Ball) -> Ball:
        t = T / u
        return f(t) * t / u

    acc = Ball.exact(0)
    est_total = 0.0
    panels = 0
    contributions: list[float] = []
    k = 0
    while True:
        lo, hi = 0.5 ** (k + 1), 0.5**k
        part, est, n = _adaptive(g, lo, hi, tol / (8.0 * (k + 1) * (k + 2)))
        acc = acc + part
        est_total += est
        panels += n
        c = abs(float(part.mid)) + part.rad
        contributions.append(c)
        if len(contributions) >= 4:
            last = contributions[-4:]
            if all(last[i + 1] >= 0.98 * last[i] for i in range(3)) and last[-1] > tol:
                raise DivergenceError(
                    "quadrature.integrate_tail: panel contributions are not "
                    f"decreasing (last {last[-1]:.3g}); integral looks divergent"
                )
            ratios = [last[i + 1] / last[i] if last[i] > 0 else 0.0 for i in range(3)]
            r = max(ratios)
            if r <= 0.9 and c * (r / (1.0 - r) if r > 0 else 0.0) <= tol / 4.0 and c <= tol / 4.0:
                trunc = c * (r / (1.0 - r) if r > 0 else 0.0) + c * 1e-15
                value = Ball(acc.mid, _fup(acc.rad + est_total + trunc + tol / 2.0))
                if value.rad > tol:
                    raise ConvergenceError(
                        f"quadrature.integrate_tail: radius {value.rad} exceeds tol {tol}"
                    )
                return QuadResult(
                    value=value, subdivisions=panels, method="tail_substitution"
                )
        k += 1
        if k >= _MAX_DYADIC:
            raise ConvergenceError(
                "quadrature.integrate_tail: tail decays too slowly to truncate "
                f"within {_MAX_DYADIC} dyadic panels"
            )


# -- the smooth main term ----------------------------------------------------------


def _log_t_over_2pi(t: Ball) -> Ball:
    return ball_log(t / ball_two_pi())


def main_integral(
    spec: PhiSpec, T1: Ball, T2: Ball | None, tol: float
) -> QuadResult:
    """Enclosure of (1/2pi) * integral of phi(t) log(t/2pi) dt from T1 to T2.

    T2 = None means +infinity.  Closed forms are used when the weight carries
    a tail antiderivative (or is the 1/log^2 family, whose main term is li);
    otherwise the adaptive integrators run on the weighted integrand.
    """
    if float(T1.mid) < spec.T0 * (1 - 1e-12):
        raise DomainError(
            f"quadrature.main_integral: T1={float(T1.mid)} below weight domain "
            f"start {spec.T0}"
        )
    if T2 is not None and not float(T1.mid) < float(T2.mid):
        raise DomainError("quadrature.main_integral: need T1 < T2")

    if spec.builtin == "inv_log_sq":
        # phi log(t/2pi) = 1/log(t/2pi); its integral is 2pi li(t/2pi)
        if T2 is None:
            raise DivergenceError(
                "quadrature.main_integral: 1/log^2 main term diverges at infinity"
            )
        value = li(T2 / ball_two_pi()) - li(T1 / ball_two_pi())
        if value.rad > tol:
            raise ConvergenceError(
                f"quadrature.main_integral: closed-form radius {value.rad} "
                f"exceeds tol {tol}"
            )
        return QuadResult(value=value, subdivisions=0, method="closed_form")

    if spec.tail_antiderivative is not None:
        F = spec.tail_antiderivative
        if T2 is None:
            # among the shipped antiderivatives only t^(1-c)/(1-c)(...) with
            # c > 1 has a finite limit, and that limit is 0
            if spec.builtin in ("inv_power", "inv_square") and (
                spec.param is None or spec.param > 1
            ):
                upper = Ball.exact(0)
            else:
                raise DivergenceError(
                    "quadrature.main_integral: main term diverges at infinity "
                    f"for builtin {spec.builtin!r}"
                )
        else:
            upper = eval_ball(F, T2)
        value = (upper - eval_ball(F, T1)) / ball_two_pi()
        if value.rad > tol:
            raise ConvergenceError(
                f"quadrature.main_integral: closed-form radius {value.rad} "
                f"exceeds tol {tol}"
            )
        return QuadResult(value=value, subdivisions=0, method="closed_form")

    two_pi = ball_two_pi()

    def f(t: Ball) -> Ball:
        return eval_ball(spec.body, t) * _log_t_over_2pi(t) / two_pi

    if T2 is None:
        return integrate_tail(f, T1, tol)
    return integrate_finite(f, T1, T2, tol)


# -- logarithmic integral -----------------------------------------------------------


def li(x: Ball) -> Ball:
    """Enclosure of li(x) for x > 1 via gamma + log log x + sum (log x)^n/(n n!)."""
    if not float(x.mid) > 1.0:
        raise DomainError(f"quadrature.li: need x > 1, got {float(x.mid)}")
    L = ball_log(x)
    acc = ball_euler_gamma() + ball_log(L)
    u = Ball.exact(1)  # L^n / n!
    l_hi = float(L.mid) + L.rad
    n = 1
    while True:
        u = u * L / n
        acc = acc + u / n
        u_hi = abs(float(u.mid)) + u.rad
        # once n+1 >= 2 L the term ratio is <= 1/2, so the dropped tail is
        # at most twice the next term
        if n + 1 >= 2.0 * l_hi and u_hi * l_hi / (n + 1) ** 2 < 2.0 ** (
            -precision_bits() - 8
        ) * (abs(float(acc.mid)) + 1e-300):
            rem = 2.0 * u_hi * l_hi / (n + 1) ** 2
            return Ball(acc.mid, _fup(acc.rad + rem))
        n += 1
        if n > 100_000:
            raise ConvergenceError("quadrature.li: series failed to converge")


_SOLDNER_DIGITS = (
    "1.45136923488338105028396848589202744949303228364801586309300455766242"
    "559575451783565953135771108682884"
)


_SOLDNER_CACHE: dict[int, Ball] = {}


def soldner() -> Ball:
    """Certified enclosure of the positive root of li (li = 0 crossing)."""
    prec = precision_bits()
    cached = _SOLDNER_CACHE.get(prec)
    if cached is not None:
        return cached
    import decimal

    mu = Fraction(decimal.Decimal(_SOLDNER_DIGITS))
    delta = Fraction(1, 10 ** min(90, max(10, int(prec * 0.301) - 2)))
    for _ in range(12):
        lo, hi = mu - delta, mu + delta
        if li(Ball.exact(lo)).sign() < 0 and li(Ball.exact(hi)).sign() > 0:
            break
        delta *= 16
    else:
        raise ConvergenceError("quadrature.soldner: failed to certify the li root")
    out = Ball.exact((lo + hi) / 2) + Ball(mpfr(0), _fup(float(delta)))
    _SOLDNER_CACHE[prec] = out
    return out
