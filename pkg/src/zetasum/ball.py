"""Midpoint-radius ball arithmetic on MPFR midpoints.

A Ball is a pair (mid, rad) asserting that some exact real value v satisfies
|v - mid| <= rad.  Every operation here preserves that containment: if the
exact inputs lie in their argument balls, the exact result lies in the result
ball.  That single guarantee is the whole design; everything else (speed,
print format) is subordinate to it.

Midpoints are gmpy2.mpfr values rounded to nearest at the global working
precision (config.set_precision_bits); MPFR guarantees correct rounding for
every function used here, so each midpoint operation contributes at most
|result| * 2**-p of error, which we book as |result| * 2**(1-p) for slack.
Radii are plain Python floats kept as upper bounds: every radius formula is
evaluated with the inputs nudged up and the final value multiplied by a
factor slightly above 1, which dominates the double-rounding of the handful
of float operations involved.

Radii only ever grow along a computation.  The payoff is the converse of the
guarantee above: when a final ball excludes zero, or lands inside a target
interval, that conclusion is certified (up to MPFR's published rounding
contract), not estimated.
"""

from __future__ import annotations

import decimal
import math
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import DomainError

# One multiplicative nudge covers ~2**13 chained float radius operations;
# no radius formula below chains more than a few dozen.
_UP = 1.0 + 2.0**-40
_MPFR_TYPE = type(mpfr(0))
_MPQ_TYPE = type(mpq(0))
# Absolute floor added when converting midpoints to float upper bounds,
# so magnitudes below DBL_MIN cannot round to a 0.0 bound.
_TINY = 1e-300


def _fup(x) -> float:
    """Float upper bound for |x| (x an mpfr)."""
    return abs(float(x)) * (1.0 + 2.0**-50) + _TINY


def _fdown(x) -> float:
    """Float lower bound for |x|."""
    f = abs(float(x)) * (1.0 - 2.0**-50)
    return f if f > 0.0 else 0.0


def _prec() -> int:
    return gmpy2.get_context().precision


def _rnd(mid) -> float:
    """Rounding-error radius of one correctly rounded MPFR op: 2**(1-p) relative.

    A zero result is exact (MPFR's exponent range is effectively unbounded
    here, so nothing underflows to zero inside it).  Nonzero results keep a
    one-subnormal floor: for |mid| below ~1e-286 the relative term itself
    underflows in double arithmetic, which would misreport a rounded op
    as exact.
    """
    if gmpy2.is_zero(mid):
        return 0.0
    r = _fup(mid) * 2.0 ** (1 - _prec())
    return r if r > 0.0 else 5e-324


class Ball:
    """Certified enclosure mid +- rad of one real number."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad: float = 0.0):
        if not isinstance(mid, _MPFR_TYPE):
            mid = mpfr(mid)
        if gmpy2.is_nan(mid) or gmpy2.is_infinite(mid):
            raise DomainError("numeric.Ball: midpoint must be finite")
        rad = float(rad)
        if not (0.0 <= rad < math.inf):  # catches NaN too
            raise DomainError("numeric.Ball: radius must be finite and >= 0")
        self.mid = mid
        self.rad = rad

    # -- constructors --------------------------------------------------

    @staticmethod
    def exact(value) -> "Ball":
        """Ball of radius 0 when value converts exactly, else radius 1 ulp.

        Accepts int, float, mpfr, Fraction, and mpq.  Floats and ints are
        dyadic so they convert exactly unless they overflow the precision.
        """
        if isinstance(value, Ball):
            return value
        q = _to_mpq(value)
        mid = mpfr(q)
        rad = 0.0 if mpq(mid) == q else _rnd(mid)
        return Ball(mid, rad)

    @staticmethod
    def from_decimal(text: str) -> "Ball":
        """Parse a decimal literal into a ball of radius <= 1 ulp (0 if exact)."""
        try:
            # Decimal first: Fraction only learned exponent strings in 3.11
            q = mpq(Fraction(decimal.Decimal(text.strip())))
        except (ValueError, ZeroDivisionError, decimal.InvalidOperation) as exc:
            raise DomainError(f"numeric.from_decimal: not a decimal literal: {text!r}") from exc
        mid = mpfr(q)
        rad = 0.0 if mpq(mid) == q else _rnd(mid)
        return Ball(mid, rad)

    # -- exact queries ---------------------------------------------------
    # Containment tests go through mpq so no further rounding can flip them.

    def contains(self, value) -> bool:
        """True iff |value - mid| <= rad, decided in exact rational arithmetic."""
        d = abs(_to_mpq(value) - mpq(self.mid))
        return d <= mpq(Fraction(self.rad))

    def intersects(self, other: "Ball") -> bool:
        d = abs(mpq(self.mid) - mpq(other.mid))
        return d <= mpq(Fraction(self.rad)) + mpq(Fraction(other.rad))

    def exact_lo(self) -> Fraction:
        q = mpq(self.mid)
        return Fraction(int(q.numerator), int(q.denominator)) - Fraction(self.rad)

    def exact_hi(self) -> Fraction:
        q = mpq(self.mid)
        return Fraction(int(q.numerator), int(q.denominator)) + Fraction(self.rad)

    def is_positive(self) -> bool:
        """True iff every value in the ball is > 0."""
        return mpq(self.mid) > mpq(Fraction(self.rad))

    def is_negative(self) -> bool:
        return mpq(self.mid) < -mpq(Fraction(self.rad))

    def contains_zero(self) -> bool:
        return not (self.is_positive() or self.is_negative())

    def sign(self) -> int:
        """+1 / -1 if the ball excludes zero, else 0 (sign not certified)."""
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        return 0

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = Ball.exact(other)
        mid = self.mid + o.mid
        return Ball(mid, (self.rad + o.rad + _rnd(mid)) * _UP)

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.mid, self.rad)

    def __sub__(self, other):
        o = Ball.exact(other)
        mid = self.mid - o.mid
        return Ball(mid, (self.rad + o.rad + _rnd(mid)) * _UP)

    def __rsub__(self, other):
        return Ball.exact(other).__sub__(self)

    def __mul__(self, other):
        o = Ball.exact(other)
        mid = self.mid * o.mid
        rad = (
            _fup(self.mid) * o.rad
            + _fup(o.mid) * self.rad
            + self.rad * o.rad
            + _rnd(mid)
        ) * _UP
        return Ball(mid, rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Ball.exact(other)
        n_lo = _fdown(o.mid) - o.rad
        if n_lo <= 0.0:
            raise DomainError("numeric.div: divisor ball contains zero")
        mid = self.mid / o.mid
        # |x/y - m/n| <= (r|n| + |m|s) / (|n| (|n|-s))
        num = (self.rad * _fup(o.mid) + _fup(self.mid) * o.rad) * _UP
        rad = (num / (_fdown(o.mid) * n_lo) + _rnd(mid)) * _UP
        return Ball(mid, rad)

    def __rtruediv__(self, other):
        return Ball.exact(other).__truediv__(self)

    def __abs__(self):
        # ||v| - |mid|| <= |v - mid| <= rad, so the same radius still contains.
        return Ball(abs(self.mid), self.rad)

    def __pow__(self, k):
        return ball_pow(self, k)

    # -- presentation ------------------------------------------------------

    def __repr__(self):
        return f"Ball({self.mid!r}, rad={self.rad:.3e})"

    def __str__(self):
        return format_ball(self)


def _to_mpq(value):
    if isinstance(value, (int, float)):
        return mpq(Fraction(value))
    if isinstance(value, Fraction):
        # via the parts: a Fraction built from an mpq carries mpz internals,
        # which gmpy2's whole-object fast path rejects
        return mpq(value.numerator, value.denominator)
    if isinstance(value, _MPQ_TYPE):
        return value
    if isinstance(value, _MPFR_TYPE):
        return mpq(value)
    raise DomainError(f"numeric: cannot interpret {type(value).__name__} as exact value")


# -- elementary functions ----------------------------------------------------


def ball_log(x: Ball) -> Ball:
    """Natural log; requires the ball strictly positive."""
    lo = _fdown(x.mid) - x.rad
    if lo <= 0.0 or gmpy2.sign(x.mid) <= 0:
        raise DomainError("numeric.log: argument ball must be strictly positive")
    mid = gmpy2.log(x.mid)
    # |log v - log m| <= rad / min(v, m) <= rad / lo
    return Ball(mid, (x.rad / lo + _rnd(mid)) * _UP)


def ball_exp(x: Ball) -> Ball:
    mid = gmpy2.exp(x.mid)
    if x.rad > 0:
        # |e^v - e^m| <= e^m (e^rad - 1); past ~709 expm1 leaves double range
        if x.rad >= 700.0:
            raise DomainError("numeric.exp: operand radius too large to enclose")
        rad = (_fup(mid) * math.expm1(x.rad) + _rnd(mid)) * _UP
    else:
        rad = _rnd(mid)
    return Ball(mid, rad * _UP)


def ball_sqrt(x: Ball) -> Ball:
    lo = _fdown(x.mid) - x.rad
    if lo <= 0.0 or gmpy2.sign(x.mid) < 0:
        raise DomainError("numeric.sqrt: argument ball must be strictly positive")
    mid = gmpy2.sqrt(x.mid)
    return Ball(mid, (x.rad / (2.0 * math.sqrt(lo) * (1.0 - 2.0**-45)) + _rnd(mid)) * _UP)


def ball_cos(x: Ball) -> Ball:
    mid = gmpy2.cos(x.mid)
    # cos is 1-Lipschitz and has range diameter 2.
    return Ball(mid, (min(x.rad, 2.0) + _rnd(mid)) * _UP)


def ball_sin(x: Ball) -> Ball:
    mid = gmpy2.sin(x.mid)
    return Ball(mid, (min(x.rad, 2.0) + _rnd(mid)) * _UP)


def ball_atan2(y: Ball, x: Ball) -> Ball:
    """atan2 over balls; needs the box to stay away from the origin."""
    rho = max(_fdown(x.mid) - x.rad, _fdown(y.mid) - y.rad)
    if rho <= 0.0:
        raise DomainError("numeric.atan2: argument box may contain the origin")
    mid = gmpy2.atan2(y.mid, x.mid)
    # |grad atan2| = 1/rho on the box, rho a lower bound for sqrt(x^2+y^2).
    return Ball(mid, ((x.rad + y.rad) / rho + _rnd(mid)) * _UP)


def ball_pow(x: Ball, k) -> Ball:
    """x**k for integer k (repeated products) or ball/real k (exp(k*log x))."""
    if isinstance(k, int):
        if k == 0:
            return Ball(mpfr(1), 0.0)
        if k < 0:
            return Ball(mpfr(1), 0.0) / ball_pow(x, -k)
        acc = x
        for _ in range(k - 1):
            acc = acc * x
        return acc
    exponent = k if isinstance(k, Ball) else Ball.exact(k)
    return ball_exp(ball_log(x) * exponent)


# -- constants ---------------------------------------------------------------


def ball_pi() -> Ball:
    mid = gmpy2.const_pi()
    return Ball(mid, _rnd(mid))


def ball_two_pi() -> Ball:
    p = ball_pi()
    return Ball(p.mid * 2, p.rad * 2 * _UP)


def ball_euler_gamma() -> Ball:
    mid = gmpy2.const_euler()
    return Ball(mid, _rnd(mid))


# -- printing ----------------------------------------------------------------


def format_ball(b: Ball, max_digits: int = 40) -> str:
    """Render mid +- rad claiming only certified digits plus two guards.

    The number of printed fractional digits is chosen so the last two are
    already uncertain; printing more would suggest precision the radius does
    not support.
    """
    if b.rad == 0.0:
        digits = min(max_digits, int(_prec() * 0.30103))
        return f"{_mpfr_str(b.mid, digits)} (exact to working precision)"
    lead = math.floor(math.log10(b.rad))
    digits = max(0, -lead) + 2
    digits = min(digits, max_digits)
    return f"{_mpfr_str(b.mid, digits)} ± {b.rad:.1e}"


def _mpfr_str(x, frac_digits: int) -> str:
    """Fixed-point decimal with the given number of fractional digits."""
    return gmpy2.mpfr(x).__format__(f".{frac_digits}f")
