"""End-to-end acceptance: the ten headline checks, one printed line each.

Each test computes a boolean verdict, prints a single PASS/FAIL line with
the measured numbers, then asserts.  Heavy zero tables come from session
fixtures (649 zeros to t=1000, ~1 s; 10^4 zeros to t=9880, ~half a minute).
"""

import math
import random
import time
from fractions import Fraction

from zetasum import Ball, DomainError, ball_two_pi
from zetasum.config import DEFAULT_PRECISION_BITS, set_precision_bits
from zetasum.estimator import (
    _ceil_3sig,
    _upper,
    convergent_total,
    divergent_limit,
    e2_bound,
    estimate_H,
    estimate_c1,
    estimate_quarter_sum,
    finite_identity,
    lehman_estimate,
    quarter_sum_reference,
    table1_report,
)
from zetasum.phifunc import (
    Add,
    Const,
    Div,
    Exp,
    Log,
    Mul,
    Neg,
    Pi,
    Pow,
    Sub,
    Var,
    differentiate,
    eval_ball,
    eval_float,
    make_phi,
    parse_phi,
)
from zetasum.theta import q_minus_s, theta_asymptotic, theta_reference
from zetasum.zeros import find_zeros

C1 = Fraction("0.0231049931154189707889338104")
H_CONST = Fraction("-0.0171594043070981495")
TWO_PI = 2 * math.pi


def report(n: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {n:02d} {'PASS' if ok else 'FAIL'}: {detail}")


def test_01_zero_engine():
    t0 = time.time()
    table = find_zeros(1000.0)
    dt = time.time() - t0
    first = table.ordinates[0]
    enclosed = abs(float(first.mid) - 14.1347251) + first.rad <= 1e-6
    ok = len(table) == 649 and enclosed and dt < 30.0
    report(
        1,
        ok,
        f"find_zeros(1000) -> {len(table)} zeros in {dt:.1f}s; "
        f"gamma_1 = {float(first.mid):.9f} +- {first.rad:.1e}",
    )
    assert ok


def test_02_theta_consistency():
    points = (TWO_PI, 100.0, 1000.0, 10000.0)
    worst = 0.0
    ok = True
    for t in points:
        tb = ball_two_pi() if t == TWO_PI else Ball.exact(t)
        if not theta_asymptotic(tb, 3).intersects(theta_reference(tb)):
            ok = False
        q = q_minus_s(tb, 3)
        margin = (float(q.mid) + q.rad) * 150.0 * t
        worst = max(worst, margin)
        if not margin <= 1.0:
            ok = False
    report(
        2,
        ok,
        f"theta orders intersect at 4 heights; |Q-S|*150t <= {worst:.3f} (need <= 1)",
    )
    assert ok


def agree_3sig(a: float, b: float) -> bool:
    """Within half a unit in the third significant digit of b."""
    return abs(a - b) <= 0.5 * 10.0 ** (math.floor(math.log10(abs(b))) - 2)


def test_03_example_bounds(table_1000):
    spec = make_phi("builtin:inv_square")
    T = Ball.exact(1000.0)
    classical = lehman_estimate(table_1000, spec, T).error_bound
    refined = e2_bound(spec, T)
    ratio = classical.exact_lo() / refined.exact_hi()
    ok = (
        agree_3sig(float(classical.mid), 4.009e-6)
        and agree_3sig(float(refined.mid), 9.965e-9)
        and ratio >= 400
    )
    report(
        3,
        ok,
        f"classical {float(classical.mid):.3e} (target 4.009e-06), refined "
        f"{float(refined.mid):.3e} (target 9.965e-09), certified ratio >= {float(ratio):.1f}",
    )
    assert ok


def test_04_c1_reproduction(table_1000, table_10k_timed):
    table_10k, build_s = table_10k_timed
    t0 = time.time()
    small = estimate_c1(table_1000, 649)
    big = estimate_c1(table_10k, 10000)
    est_s = time.time() - t0
    ok = (
        small.value.contains(C1)
        and small.value.rad <= 1.1e-8
        and big.value.contains(C1)
        and big.value.rad <= 4e-11
        and build_s + est_s < 300.0
    )
    report(
        4,
        ok,
        f"c1 in enclosure at n=649 (rad {small.value.rad:.2e}) and n=10^4 "
        f"(rad {big.value.rad:.2e}); {build_s + est_s:.0f}s total",
    )
    assert ok


def test_05_quarter_sum_oracle(table_10k):
    t0 = time.time()
    est = estimate_quarter_sum(table_10k, 10000)
    dt = time.time() - t0
    ref = quarter_sum_reference()
    ok = est.value.intersects(ref) and est.value.rad <= 1e-8 and dt < 300.0
    report(
        5,
        ok,
        f"sum 1/(g^2+1/4) = {float(est.value.mid):.12f} +- {est.value.rad:.2e} "
        f"vs closed form {float(ref.mid):.12f}",
    )
    assert ok


def test_06_table1(table_10k):
    pinned = {
        10: ("-0.49986259", "-0.52733908", "1.96e-02"),
        100: ("-0.54054724", "-0.52767238", "8.64e-04"),
        1000: ("-0.52244974", "-0.52767173", "4.58e-05"),
        10000: ("-0.53117846", "-0.52766980", "2.78e-06"),
    }
    t0 = time.time()
    rows = {r.n: r for r in table1_report(table_10k).rows}
    dt = time.time() - t0
    bad = []
    for n, (naive, accel, bound) in pinned.items():
        r = rows.get(n)
        if r is None:
            bad.append(f"n={n} missing")
            continue
        got = (
            f"{float(r.naive.mid):.8f}",
            f"{float(r.accelerated.mid):.8f}",
            _ceil_3sig(_upper(r.bound)),
        )
        if got != (naive, accel, bound):
            bad.append(f"n={n}: {got}")
    ok = not bad and dt < 600.0
    report(
        6,
        ok,
        f"4/4 rows match to 8 decimals + 3-sig-fig bound in {dt:.0f}s"
        if ok
        else f"mismatches: {bad}",
    )
    assert ok


def test_07_H_reproduction(table_10k):
    est = estimate_H(table_10k, 10000)
    ok = est.value.contains(H_CONST) and est.value.rad <= 6e-8
    report(
        7,
        ok,
        f"H = {float(est.value.mid):.12f} +- {est.value.rad:.2e} "
        f"(target -0.0171594043070981495)",
    )
    assert ok


def test_08_identity_property(table_1000):
    combos = 0
    ok = True
    for phi in ("builtin:inv_t", "builtin:inv_square", "builtin:inv_log_sq"):
        spec = make_phi(phi)
        for t1, t2 in ((20.0, 500.0), (50.0, 200.0), (100.0, 1000.0)):
            lhs, rhs = finite_identity(
                table_1000, spec, Ball.exact(t1), Ball.exact(t2)
            )
            e2 = e2_bound(spec, Ball.exact(t1))
            if not lhs.intersects(rhs):
                ok = False
            if not abs(float(rhs.mid)) + rhs.rad <= float(e2.exact_hi()):
                ok = False
            combos += 1
    report(8, ok, f"identity lhs/rhs intersect with |rhs| <= E2 on {combos}/9 combos")
    assert ok


def _random_admissible(rng: random.Random) -> str:
    atoms = (
        lambda: f"{rng.randint(1, 9)}/t^{rng.randint(1, 4)}",
        lambda: f"{rng.randint(1, 9)}/(t^2+0.25)",
        lambda: f"{rng.randint(1, 5)}*t^(-{rng.uniform(1.1, 3.5):.2f})",
        lambda: f"{rng.randint(1, 4)}/log(t/(2*pi))^2",
    )
    k = rng.randint(1, 3)
    return " + ".join(rng.choice(atoms)() for _ in range(k))


def test_09_derivative_suite():
    rng = random.Random(1347)
    texts = [
        "1/t",
        "1/t^2",
        "t^(-1.5)",
        "1/log(t/(2*pi))^2",
        "1/(t^2+0.25)",
    ] + [_random_admissible(rng) for _ in range(100)]
    pts = [10.0 * (10.0 ** (4.0 * j / 19.0)) for j in range(20)]
    worst = 0.0
    ok = True
    for text in texts:
        ast = parse_phi(text)
        d = differentiate(ast)
        for t in pts:
            h = t * 1e-6
            ref = (eval_float(ast, t + h) - eval_float(ast, t - h)) / (2 * h)
            got = eval_float(d, t)
            rel = abs(got - ref) / max(abs(ref), 1e-300)
            worst = max(worst, rel)
            if rel > 1e-6:
                ok = False
    report(
        9,
        ok,
        f"{len(texts)} expressions x 20 points; worst relative FD gap {worst:.2e}",
    )
    assert ok


def _random_tree(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(
            (
                Const(Fraction(rng.randint(-10, 10))),
                Const(Fraction(rng.randint(1, 60), rng.randint(1, 60))),
                Var(),
                Pi(),
            )
        )
    op = rng.randrange(8)
    a = _random_tree(rng, depth - 1)
    if op == 0:
        return Add(a, _random_tree(rng, depth - 1))
    if op == 1:
        return Sub(a, _random_tree(rng, depth - 1))
    if op == 2:
        return Mul(a, _random_tree(rng, depth - 1))
    if op == 3:
        return Div(a, _random_tree(rng, depth - 1))
    if op == 4:
        return Neg(a)
    if op == 5:
        return Log(a)
    if op == 6:
        return Exp(a)
    return Pow(a, Const(Fraction(rng.randint(-3, 3))))


def test_10_containment_fuzz():
    rng = random.Random(20260816)
    target, checked, attempts = 10000, 0, 0
    ok = True
    try:
        while checked < target:
            attempts += 1
            assert attempts < 40 * target, "domain rejections out of hand"
            tree = _random_tree(rng, 4)
            tq = Fraction(rng.randint(1, 64), rng.randint(1, 8))
            try:
                set_precision_bits(DEFAULT_PRECISION_BITS)
                coarse = eval_ball(tree, Ball.exact(tq))
                set_precision_bits(4 * DEFAULT_PRECISION_BITS)
                fine = eval_ball(tree, Ball.exact(tq))
            except DomainError:
                continue
            import gmpy2

            q = gmpy2.mpq(fine.mid)
            refined = Fraction(int(q.numerator), int(q.denominator))
            if not coarse.contains(refined):
                ok = False
                break
            checked += 1
    finally:
        set_precision_bits(DEFAULT_PRECISION_BITS)
    report(
        10,
        ok,
        f"{checked} random trees: every 128-bit ball contains the 512-bit value",
    )
    assert ok
