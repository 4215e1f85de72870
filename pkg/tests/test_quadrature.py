"""Certified quadrature: panel rules, tails, the main integral, and li.

Closed forms supply the oracles: log-power antiderivatives for the finite
examples, the 50-term li series (with factorial denominators summed in exact
Fractions) for the logarithmic integral.
"""

import math
import random
from fractions import Fraction

import mpmath
import pytest

from zetasum import (
    Ball,
    ConvergenceError,
    DivergenceError,
    DomainError,
    ball_exp,
    ball_log,
    ball_pi,
    ball_two_pi,
)
from zetasum.phifunc import make_phi
from zetasum.quadrature import (
    QuadResult,
    integrate_finite,
    integrate_tail,
    li,
    main_integral,
    soldner,
)

mpmath.mp.dps = 50

TWO_PI = 2 * math.pi


def mp_frac(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    return Fraction(-man if sign else man) * Fraction(2) ** exp


def inv(t: Ball) -> Ball:
    return 1 / t


def inv_sq_log(t: Ball) -> Ball:
    return ball_log(t / ball_two_pi()) / (t * t)


# -- finite panels ---------------------------------------------------------


def test_reciprocal_over_1_e():
    e = ball_exp(Ball.exact(1))
    got = integrate_finite(inv, Ball.exact(1), e, tol=1e-12)
    assert got.value.contains(1)
    assert got.value.rad <= 1e-12
    assert got.method == "adaptive"
    assert got.subdivisions >= 1


def test_log_over_t_quarter_pi():
    # (1/2pi) int_{2pi}^{2pi e} log(t/2pi)/t dt = 1/(4 pi)
    two_pi = ball_two_pi()
    f = lambda t: ball_log(t / two_pi) / t / two_pi
    got = integrate_finite(f, two_pi, two_pi * ball_exp(Ball.exact(1)), tol=1e-12)
    assert got.value.contains(mp_frac(1 / (4 * mpmath.pi)))


def test_polynomial_exact():
    # GL15 integrates low-degree polynomials exactly up to roundoff
    f = lambda t: t * t * t - 2 * t + Fraction(1, 3)
    got = integrate_finite(f, Ball.exact(-1), Ball.exact(3), tol=1e-10)
    # int = [t^4/4 - t^2 + t/3] from -1 to 3 = 20 - 8 + 4/3
    assert got.value.contains(Fraction(40, 3))
    assert got.value.rad <= 1e-10


def test_tolerance_is_respected():
    # the error estimator samples in doubles, so the reachable floor scales
    # with interval length x ~1e-13; stay above it
    rng = random.Random(7)
    for _ in range(6):
        a = rng.uniform(1.0, 30.0)
        b = a + rng.uniform(0.5, 40.0)
        tol = 10.0 ** rng.uniform(-11, -6)
        got = integrate_finite(inv, Ball.exact(a), Ball.exact(b), tol=tol)
        assert got.value.rad <= tol
        assert got.value.contains(mp_frac(mpmath.log(mpmath.mpf(b) / mpmath.mpf(a))))


def test_additivity():
    rng = random.Random(99)
    for _ in range(5):
        a = rng.uniform(1.0, 50.0)
        b = a + rng.uniform(0.1, 40.0)
        c = b + rng.uniform(0.1, 40.0)
        tol = 1e-9
        whole = integrate_finite(inv_sq_log, Ball.exact(a), Ball.exact(c), tol).value
        left = integrate_finite(inv_sq_log, Ball.exact(a), Ball.exact(b), tol).value
        right = integrate_finite(inv_sq_log, Ball.exact(b), Ball.exact(c), tol).value
        parts = left + right
        assert whole.exact_lo() >= parts.exact_lo()
        assert whole.exact_hi() <= parts.exact_hi()


def test_endpoint_order_checked():
    with pytest.raises(DomainError):
        integrate_finite(inv, Ball.exact(5), Ball.exact(2), tol=1e-9)


def test_unreachable_tolerance():
    # a jump keeps the width-floor panel's error estimate above any tiny tol
    step = lambda t: Ball.exact(1) if float(t.mid) < 0.5 else Ball.exact(0)
    with pytest.raises(ConvergenceError):
        integrate_finite(step, Ball.exact(0), Ball.exact(1), tol=1e-14)


def test_ball_endpoints_widen_result():
    a = Ball(2.0, 1e-8)
    sharp = integrate_finite(inv, Ball.exact(2), Ball.exact(9), tol=1e-10)
    fuzzy = integrate_finite(inv, a, Ball.exact(9), tol=1e-6)
    assert fuzzy.value.rad > sharp.value.rad
    assert fuzzy.value.intersects(sharp.value)


# -- tails --------------------------------------------------------------------


def test_tail_inverse_square():
    f = lambda t: 1 / (t * t)
    got = integrate_tail(f, Ball.exact(10), tol=1e-10)
    assert got.value.contains(Fraction(1, 10))
    assert got.method == "tail_substitution"
    assert got.value.rad <= 1e-10


def test_tail_with_log_vs_closed_form():
    # int_T^inf t^-2 log(t/2pi) dt = (log(T/2pi) + 1)/T
    T = 1000.0
    f = lambda t: ball_log(t / ball_two_pi()) / (t * t)
    got = integrate_tail(f, Ball.exact(T), tol=1e-12)
    ref = (ball_log(Ball.exact(T) / ball_two_pi()) + 1) / Ball.exact(T)
    assert got.value.intersects(ref)


def test_tail_divergence_detected():
    with pytest.raises(DivergenceError):
        integrate_tail(inv, Ball.exact(10), tol=1e-8)
    slow = lambda t: 1 / (t * ball_log(t))  # also divergent, only just
    with pytest.raises((DivergenceError, ConvergenceError)):
        integrate_tail(slow, Ball.exact(10), tol=1e-8)


# -- main integral ----------------------------------------------------------------


def test_main_integral_inv_square_tail():
    # (1/2pi) 1e-3 (log(1000/2pi) + 1)
    spec = make_phi("builtin:inv_square")
    got = main_integral(spec, Ball.exact(1000), None, tol=1e-12)
    ref = mp_frac(
        (mpmath.log(1000 / (2 * mpmath.pi)) + 1) / (2000 * mpmath.pi)
    )
    assert got.value.contains(ref)
    assert got.method == "closed_form"


def test_main_integral_inv_t_log_squared():
    # (1/2pi) int log(t/2pi)/t = log^2(t/2pi)/4pi; over [2pi, 2pi e^2] -> 1/pi
    spec = make_phi("builtin:inv_t")
    t2 = ball_two_pi() * ball_exp(Ball.exact(2))
    got = main_integral(spec, ball_two_pi(), t2, tol=1e-12)
    assert got.value.contains(mp_frac(1 / mpmath.pi))


def test_main_integral_inv_log_sq_is_li_difference():
    spec = make_phi("builtin:inv_log_sq")
    T1 = ball_two_pi() * ball_exp(Ball.exact(1))
    T = Ball.exact(5000.0)
    got = main_integral(spec, T1, T, tol=1e-12)
    ref = li(T / ball_two_pi()) - li(ball_exp(Ball.exact(1)))
    assert got.value.intersects(ref)


@pytest.mark.parametrize("builtin", ["inv_square", "inv_t", "inv_power:2.5"])
def test_closed_form_matches_adaptive(builtin):
    spec = make_phi(f"builtin:{builtin}")
    dsl = {
        "inv_square": "1/t^2",
        "inv_t": "1/t",
        "inv_power:2.5": "t^(-2.5)",
    }[builtin]
    numeric = make_phi(dsl)
    rng = random.Random(hash(builtin) & 0xFFFF)
    for _ in range(20):
        t1 = rng.uniform(7.0, 300.0)
        t2 = t1 + rng.uniform(1.0, 400.0)
        a = main_integral(spec, Ball.exact(t1), Ball.exact(t2), tol=1e-10)
        b = main_integral(numeric, Ball.exact(t1), Ball.exact(t2), tol=1e-10)
        assert a.value.intersects(b.value)
        assert a.value.rad <= 1e-10 and b.value.rad <= 1e-10


def test_main_integral_divergent_tail_rejected():
    spec = make_phi("builtin:inv_t")
    with pytest.raises(DivergenceError):
        main_integral(spec, ball_two_pi(), None, tol=1e-9)
    with pytest.raises(DivergenceError):
        main_integral(make_phi("builtin:inv_log_sq"), Ball.exact(100), None, tol=1e-9)


def test_main_integral_domain():
    spec = make_phi("builtin:inv_square")
    with pytest.raises(DomainError):
        main_integral(spec, Ball.exact(3.0), Ball.exact(100.0), tol=1e-9)


# -- logarithmic integral ----------------------------------------------------------


def li_series_oracle(x: float, terms: int = 50) -> Fraction:
    """gamma + log log x + sum log(x)^n/(n n!), Fractions over a 50-digit log."""
    lx = mp_frac(mpmath.log(mpmath.mpf(x)))
    acc = mp_frac(mpmath.euler) + mp_frac(mpmath.log(mpmath.log(mpmath.mpf(x))))
    fact = 1
    for n in range(1, terms + 1):
        fact *= n
        acc += lx**n / (n * fact)
    return acc


def test_li_pinned_values():
    # series oracle at the exact dyadic argument float(e); true-e enclosure
    # goes against mpmath instead
    assert li(Ball.exact(math.e)).contains(li_series_oracle(math.e))
    got2 = li(Ball.exact(2))
    assert got2.contains(li_series_oracle(2.0))
    assert f"{float(got2.mid):.8f}" == "1.04516378"
    li_e = li(ball_exp(Ball.exact(1)))
    assert li_e.contains(mp_frac(mpmath.li(mpmath.e)))
    assert f"{float(li_e.mid):.10f}".startswith("1.89511781")


def test_li_difference_contains_zero():
    x = Ball.exact(37.5)
    assert (li(x) - li(x)).contains_zero()


def test_li_monotone():
    assert (li(Ball.exact(5)) - li(Ball.exact(4))).is_positive()


def test_li_domain():
    with pytest.raises(DomainError):
        li(Ball.exact(1))
    with pytest.raises(DomainError):
        li(Ball.exact(0.5))


def test_li_large_argument():
    # li(10^6) from mpmath
    got = li(Ball.exact(1e6))
    assert got.contains(mp_frac(mpmath.li(mpmath.mpf(10) ** 6)))


def test_soldner_is_the_li_root():
    mu = soldner()
    assert li(mu).contains_zero()
    assert mu.contains(mp_frac(mpmath.mpf("1.45136923488338105028396848589202744949303228364801")))
    assert mu.rad < 1e-30


def test_quadresult_is_frozen():
    got = integrate_tail(lambda t: 1 / (t * t), Ball.exact(10), tol=1e-8)
    assert isinstance(got, QuadResult)
    with pytest.raises(AttributeError):
        got.value = Ball.exact(0)
