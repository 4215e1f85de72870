"""Theta function: asymptotic vs reference, remainder bounds, Gram points.

mpmath supplies the independent oracle: theta(t) is the imaginary part of
loggamma(1/4 + it/2) minus (t/2) log pi, evaluated at 60 digits.
"""

import math
from fractions import Fraction

import mpmath
import pytest

from zetasum import Ball, DomainError, ball_pi, ball_two_pi
from zetasum.theta import (
    ThetaExpansion,
    bernoulli,
    gram_point,
    q_minus_s,
    theta_asymptotic,
    theta_mid_float,
    theta_reference,
)

mpmath.mp.dps = 60


def mp_frac(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    return Fraction(-man if sign else man) * Fraction(2) ** exp


def theta_oracle(t: float) -> Fraction:
    v = mpmath.im(mpmath.loggamma(mpmath.mpf(0.25) + 0.5j * mpmath.mpf(t)))
    v -= 0.5 * mpmath.mpf(t) * mpmath.log(mpmath.pi)
    return mp_frac(v)


SAMPLE_T = (2 * math.pi, 10.0, 100.0, 1000.0, 10000.0)


def test_bernoulli_exact():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("t", SAMPLE_T)
def test_asymptotic_contains_oracle(t):
    got = theta_asymptotic(Ball.exact(t), k=3)
    assert got.contains(theta_oracle(t))


@pytest.mark.parametrize("t", SAMPLE_T)
def test_reference_contains_oracle(t):
    got = theta_reference(Ball.exact(t))
    assert got.contains(theta_oracle(t))
    # reference is the tight one
    assert got.rad < 1e-25


@pytest.mark.parametrize("t", SAMPLE_T)
@pytest.mark.parametrize("k", [1, 3, 6, 10])
def test_asymptotic_orders_intersect_reference(t, k):
    a = theta_asymptotic(Ball.exact(t), k=k)
    b = theta_reference(Ball.exact(t))
    assert a.intersects(b)


def test_asymptotic_domain():
    with pytest.raises(DomainError):
        theta_asymptotic(Ball.exact(1.0))
    with pytest.raises(DomainError):
        theta_asymptotic(Ball.exact(100.0), k=0)
    with pytest.raises(DomainError):
        theta_asymptotic(Ball.exact(100.0), k=11)


def test_remainder_bound_decreases_with_order_and_t():
    bounds = [ThetaExpansion.of_order(k).remainder_bound(50.0) for k in (1, 2, 4, 8)]
    assert all(b1 > b2 for b1, b2 in zip(bounds, bounds[1:]))
    e = ThetaExpansion.of_order(3)
    assert e.remainder_bound(100.0) > e.remainder_bound(1000.0)


def test_remainder_bound_is_honest():
    # |theta_k(t) - theta(t)| <= remainder_bound with room to spare
    for t in (10.0, 50.0, 300.0):
        for k in (1, 2, 3):
            mid = theta_asymptotic(Ball.exact(t), k=k)
            err = abs(float(mid.mid) - float(theta_oracle(t)))
            assert err <= ThetaExpansion.of_order(k).remainder_bound(t)


@pytest.mark.parametrize("t", [2 * math.pi, 100.0, 1000.0, 10000.0])
def test_q_minus_s_bound(t):
    got = q_minus_s(Ball.exact(t), k=3)
    assert float(got.mid) + got.rad <= 1.0 / (150.0 * t)


def test_theta_mid_float_tracks_ball():
    for t in SAMPLE_T:
        assert abs(theta_mid_float(t) - float(theta_asymptotic(Ball.exact(t)).mid)) < 1e-8


def test_gram_points():
    g0 = gram_point(0)
    # theta(g_0) = 0 at g_0 = 17.8455995...
    assert g0.contains(mp_frac(mpmath.mpf("17.8455995404108608"))) or abs(
        float(g0.mid) - 17.8455995404108608
    ) < 1e-12
    for n in (-1, 0, 1, 2, 100, 1000):
        g = gram_point(n)
        th = theta_reference(g)
        assert th.intersects(ball_pi() * n)
    with pytest.raises(DomainError):
        gram_point(-2)


def test_gram_points_increase():
    gs = [float(gram_point(n).mid) for n in range(-1, 12)]
    assert all(a < b for a, b in zip(gs, gs[1:]))
    # first Gram interval [g_-1, g_0] brackets the first zero ordinate
    assert gs[0] < 14.134725 < gs[1]


def test_theta_at_two_pi_matches_series_start():
    # theta(2 pi) = -pi/8 + (series tail); the main term vanishes there
    got = theta_asymptotic(ball_two_pi(), k=5)
    assert got.contains(theta_oracle(2 * math.pi))
