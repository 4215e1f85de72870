"""Vectorized float evaluators used for scanning and bisection.

Nothing in this module is certified — these are fast numpy paths the zero
finder uses to *locate* roots and sign patterns.  Certification happens
afterwards in `zeros`, with ball evaluations at a far smaller number of
points.  Keeping this split explicit means the rigorous code never inherits
a float shortcut by accident.

Two evaluators cover the line:

* z_em: Euler-Maclaurin zeta(1/2+it) rotated by exp(i theta), used for
  t < EM_CUTOFF.  Cost grows linearly with t but the error stays near float
  roundoff, which matters because early zeros dominate every weighted sum.
* z_rs: the main-sum-plus-corrections form with three correction terms,
  used above the cutoff, where its truncation error (about 1e-10 at the
  cutoff, falling like t^(-7/4)) is already far below the bisection widths
  we resolve.

The correction terms need derivatives of the endpoint function
Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).  Psi is entire (the
apparent poles cancel), symmetric about p = 1/2, and we evaluate it and its
derivatives from one Taylor table about p = 1/2 computed once at 400 bits;
the quotient recurrence loses ~2 bits per coefficient, which that precision
absorbs easily.
"""

from __future__ import annotations

import math

import gmpy2
import numpy as np
from gmpy2 import mpfr

TWO_PI = 2.0 * math.pi
# Above this height the main-sum form's root bias (evaluator error divided by
# the local slope of Z) measures ~5e-10, safely inside the default claimed
# 1e-9 radius; below it Euler-Maclaurin keeps errors near float roundoff.
EM_CUTOFF = 6000.0
_EM_BANDS = (0.0, 600.0, 1200.0, 2400.0, 4200.0, EM_CUTOFF)

# theta series coefficients 1/(48 t) + 7/(5760 t^3) + 31/(80640 t^5)
_T1, _T3, _T5 = 1.0 / 48.0, 7.0 / 5760.0, 31.0 / 80640.0


def theta_f(t):
    """Float theta(t); accurate to ~1e-10 already at t = 10."""
    t = np.asarray(t, dtype=float)
    return (
        0.5 * t * (np.log(t / TWO_PI) - 1.0)
        - math.pi / 8.0
        + _T1 / t
        + _T3 / t**3
        + _T5 / t**5
    )


def theta_deriv_f(t):
    t = np.asarray(t, dtype=float)
    return 0.5 * np.log(t / TWO_PI) - _T1 / t**2


def gram_points_f(n_lo: int, n_hi: int) -> np.ndarray:
    """Float Gram points g_n for n in [n_lo, n_hi] inclusive."""
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    target = n * math.pi
    # crude inversion of (t/2)(log(t/2pi)-1) = target, then Newton
    g = TWO_PI * np.exp(1.0) * np.maximum((target + math.pi / 8) / (TWO_PI * math.e), 1.02)
    for _ in range(40):
        lg = np.log(np.maximum(g, 7.0) / TWO_PI)
        g_new = np.where(lg > 1.001, 2.0 * (target + math.pi / 8) / (lg - 1.0), g * 1.2)
        if np.allclose(g_new, g, rtol=1e-9):
            g = g_new
            break
        g = g_new
    g = np.maximum(g, 9.0)
    for _ in range(5):
        g = g - (theta_f(g) - target) / theta_deriv_f(g)
    return g


# -- Psi Taylor table ---------------------------------------------------------

_PSI_TABLE: list[np.ndarray] | None = None
_PSI_DEGREE = 84


def _build_psi_table() -> list[np.ndarray]:
    """Taylor coefficients of Psi^(m)(1/2+u), m = 0..6, as float arrays.

    Series division num/den runs at 400 bits: the denominator -cos(2 pi u)
    vanishes at |u| = 1/4, so the recurrence amplifies roundoff by about 4^k,
    i.e. 2 bits per coefficient — harmless at this precision.  The quotient
    coefficients themselves are the Taylor coefficients of an entire
    function and decay fast; by degree 84 they are < 1e-28.
    """
    ctx = gmpy2.get_context()
    saved = ctx.precision
    ctx.precision = 400
    try:
        M = _PSI_DEGREE
        pi = gmpy2.const_pi()
        c58 = gmpy2.cos(5 * pi / 8)
        s58 = gmpy2.sin(5 * pi / 8)
        num = [mpfr(0)] * (M + 1)
        den = [mpfr(0)] * (M + 1)
        # cos(2 pi u^2) c58 + sin(2 pi u^2) s58  and  -cos(2 pi u)
        w = mpfr(1)  # (2 pi)^k / k!
        for k in range(0, M + 1):
            sign = -1 if (k // 2) % 2 else 1
            if k % 2 == 0:
                if 2 * k <= M:
                    num[2 * k] += sign * w * c58
                den[k] = -sign * w
            else:
                if 2 * k <= M:
                    num[2 * k] += sign * w * s58
            w = w * 2 * pi / (k + 1)
        q = [mpfr(0)] * (M + 1)
        for k in range(M + 1):
            acc = num[k]
            for j in range(k):
                acc -= q[j] * den[k - j]
            q[k] = acc / den[0]
        base = np.array([float(c) for c in q])
        tables = [base]
        coeffs = [gmpy2.mpfr(c) for c in q]
        for m in range(1, 8):
            coeffs = [coeffs[k] * k for k in range(1, len(coeffs))]
            tables.append(np.array([float(c) for c in coeffs]))
        return tables
    finally:
        ctx.precision = saved


def psi_table() -> list[np.ndarray]:
    global _PSI_TABLE
    if _PSI_TABLE is None:
        _PSI_TABLE = _build_psi_table()
    return _PSI_TABLE


def psi_deriv_f(m: int, p):
    """Psi^(m)(p) for p in [0, 1], vectorized."""
    u = np.asarray(p, dtype=float) - 0.5
    c = psi_table()[m]
    acc = np.zeros_like(u)
    for a in c[::-1]:
        acc = acc * u + a
    return acc


def psi_abs_sum(m: int) -> float:
    """sum_k |c_mk| 2^-k for derivative table m.

    Bounds both |Psi^(m)| on [0, 1] and the magnitude sum entering the
    standard Horner roundoff estimate, so callers can book a rigorous slack
    for float evaluations of the correction terms.
    """
    c = psi_table()[m]
    return float(np.abs(c) @ (0.5 ** np.arange(len(c))))


def psi_eval_slack(m: int) -> float:
    """Absolute error bound for psi_deriv_f(m, p) with p in [0, 1].

    Horner roundoff <= 2 n eps sum|c_k u^k|, plus one eps per stored
    coefficient (they were rounded from 400-bit values), plus 1e-14 covering
    the tail of the series beyond degree 84 (coefficients of the entire
    function decay below 1e-28 there; the factor k!/(k-m)! <= 84^7 for the
    derivatives taken here keeps the tail under 1e-15).
    """
    n = len(psi_table()[m])
    return (2 * n + 1) * 2.3e-16 * psi_abs_sum(m) + 1e-14


# -- Riemann-Siegel with three correction terms -------------------------------

_C1_SCALE = 1.0 / (96.0 * math.pi**2)
_C2_SCALE_A = 1.0 / (64.0 * math.pi**2)
_C2_SCALE_B = 1.0 / (18432.0 * math.pi**4)


def z_rs(ts: np.ndarray) -> np.ndarray:
    """Z(t) by main sum + C0, C1, C2 corrections; use above EM_CUTOFF."""
    ts = np.asarray(ts, dtype=float)
    a = np.sqrt(ts / TWO_PI)
    N = np.floor(a).astype(int)
    p = a - N
    n_max = int(N.max())
    ns = np.arange(1, n_max + 1, dtype=float)
    args = theta_f(ts)[:, None] - ts[:, None] * np.log(ns)[None, :]
    terms = np.cos(args) / np.sqrt(ns)[None, :]
    mask = ns[None, :] <= N[:, None]
    main = 2.0 * (terms * mask).sum(axis=1)

    c0 = psi_deriv_f(0, p)
    c1 = -psi_deriv_f(3, p) * _C1_SCALE
    c2 = psi_deriv_f(2, p) * _C2_SCALE_A + psi_deriv_f(6, p) * _C2_SCALE_B
    a2 = a * a  # t / 2 pi
    corr = (c0 + c1 / a + c2 / a2) / np.sqrt(a)
    sign = np.where(N % 2 == 1, 1.0, -1.0)  # (-1)^(N-1)
    return main + sign * corr


# -- Euler-Maclaurin below the cutoff ------------------------------------------

_EM_BERN = None  # B_2k/(2k)! for k=1..K


def _em_bern(K: int) -> np.ndarray:
    global _EM_BERN
    if _EM_BERN is None or len(_EM_BERN) < K:
        from .theta import bernoulli

        _EM_BERN = np.array([float(bernoulli(2 * k)) / math.factorial(2 * k) for k in range(1, K + 1)])
    return _EM_BERN[:K]


def z_em(ts: np.ndarray, K: int = 10) -> np.ndarray:
    """Z(t) via Euler-Maclaurin zeta on the critical line; use below EM_CUTOFF."""
    ts = np.asarray(ts, dtype=float)
    if ts.size > 512:  # bound the (points x terms) work matrices
        out = np.empty_like(ts)
        for i in range(0, ts.size, 512):
            out[i : i + 512] = z_em(ts[i : i + 512], K)
        return out
    t_hi = float(ts.max(initial=0.0))
    N = max(32, int(1.5 * t_hi) + 48)
    ns = np.arange(1, N, dtype=float)
    logn = np.log(ns)
    phase = ts[:, None] * logn[None, :]
    rs = 1.0 / np.sqrt(ns)
    re = (np.cos(phase) * rs[None, :]).sum(axis=1)
    im = -(np.sin(phase) * rs[None, :]).sum(axis=1)

    s = 0.5 + 1j * ts
    Nf = float(N)
    n_pow = np.exp(-s * math.log(Nf))  # N^-s
    tail = n_pow * Nf / (s - 1.0) + 0.5 * n_pow
    poch = np.ones_like(s)
    npow_k = n_pow / Nf  # N^(-s-1)
    bern = _em_bern(K)
    for k in range(1, K + 1):
        # pochhammer s(s+1)...(s+2k-2)
        poch = poch * (s + (2 * k - 3)) * (s + (2 * k - 2)) if k > 1 else s
        tail = tail + bern[k - 1] * poch * npow_k
        npow_k = npow_k / (Nf * Nf)
    zeta = re + 1j * im + tail
    th = theta_f(ts)
    return (np.exp(1j * th) * zeta).real


def z_many(ts: np.ndarray) -> np.ndarray:
    """Dispatch on height, banding the Euler-Maclaurin range so that points
    low in a mixed array are not charged the term count of the highest."""
    ts = np.asarray(ts, dtype=float)
    out = np.empty_like(ts)
    for lo, hi in zip(_EM_BANDS[:-1], _EM_BANDS[1:]):
        m = (ts >= lo) & (ts < hi)
        if m.any():
            out[m] = z_em(ts[m])
    m = ts >= EM_CUTOFF
    if m.any():
        out[m] = z_rs(ts[m])
    return out
