"""Zero engine: Hardy Z, the finder, counting, and table round-trips.

Reference ordinates are frozen from mpmath.zetazero at 30 digits; classical
counts N(100)=29 and N(1000)=649 pin the completeness logic.
"""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from zetasum import (
    AmbiguousQueryError,
    Ball,
    CompletenessError,
    DomainError,
    FileFormatError,
    ball_two_pi,
)
from zetasum.zeros import (
    L_of,
    Q_of,
    ZeroTable,
    count_N,
    find_zeros,
    hardy_z,
    import_zeros,
    write_zeros,
)
from zetasum import fastz

mpmath.mp.dps = 40

# first ordinates, mpmath.zetazero, 30 digits
GAMMA = (
    Fraction("14.134725141734693790457251983562"),
    Fraction("21.022039638771554992628479593897"),
    Fraction("25.010857580145688763213790992563"),
    Fraction("30.424876125859513210311897530584"),
    Fraction("32.935061587739189690662368964074"),
)


def mp_frac(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    return Fraction(-man if sign else man) * Fraction(2) ** exp


# -- Hardy Z -------------------------------------------------------------


@pytest.mark.parametrize("t", [15.0, 18.0, 50.0, 100.0, 500.0, 1000.0, 7000.0])
def test_hardy_z_contains_mpmath(t):
    got = hardy_z(Ball.exact(t))
    assert got.contains(mp_frac(mpmath.siegelz(t)))


def test_hardy_z_heuristic_mode_agrees():
    # same midpoint evaluation, different remainder accounting
    for tv in (60.0, 100.0, 1500.0):
        t = Ball.exact(tv)
        a, b = hardy_z(t, certified=True), hardy_z(t, certified=False)
        assert float(a.mid) == float(b.mid)
        assert b.contains(mp_frac(mpmath.siegelz(tv)))


def test_hardy_z_sign_changes_at_first_zero():
    lo = hardy_z(Ball.exact(14.0))
    hi = hardy_z(Ball.exact(14.3))
    assert lo.sign() * hi.sign() == -1


def test_fast_path_agrees_with_balls():
    ts = np.linspace(20.0, 4000.0, 57)
    fast = fastz.z_many(ts)
    for t, zf in zip(ts, fast):
        ball = hardy_z(Ball.exact(float(t)), certified=False)
        assert abs(zf - float(ball.mid)) < 1e-6


def test_fast_path_em_rs_agree_near_cutoff():
    ts = np.linspace(fastz.EM_CUTOFF - 50.0, fastz.EM_CUTOFF + 50.0, 23)
    assert np.max(np.abs(fastz.z_em(ts) - fastz.z_rs(ts))) < 1e-7


# -- finder ----------------------------------------------------------------


def test_find_first_zero():
    table = find_zeros(15.0)
    assert len(table) == 1
    assert table.ordinates[0].contains(GAMMA[0])
    assert table.source == "computed"
    assert table.height_max == 15.0


def test_find_to_100():
    table = find_zeros(100.0)
    assert len(table) == 29
    for got, ref in zip(table.ordinates, GAMMA):
        assert got.contains(ref)


def test_find_to_1000(table_1000):
    assert len(table_1000) == 649
    mids = [float(g.mid) for g in table_1000.ordinates]
    assert all(a < b for a, b in zip(mids, mids[1:]))
    # neighbouring enclosures never touch
    for a, b in zip(table_1000.ordinates, table_1000.ordinates[1:]):
        assert float(a.mid) + a.rad < float(b.mid) - b.rad


def test_refine_tol_controls_radius():
    loose = find_zeros(40.0, refine_tol=1e-6)
    tight = find_zeros(40.0, refine_tol=1e-9)
    assert len(loose) == len(tight) == 6
    assert all(g.rad <= 1e-6 for g in loose.ordinates)
    assert all(g.rad <= 1e-9 for g in tight.ordinates)
    for a, b in zip(loose.ordinates, tight.ordinates):
        assert a.intersects(b)


def test_find_domain_checks():
    with pytest.raises(DomainError):
        find_zeros(14.0)
    with pytest.raises(DomainError):
        find_zeros(2.0e6)
    with pytest.raises(DomainError):
        find_zeros(100.0, refine_tol=1e-12)


def test_table_validation():
    with pytest.raises(DomainError):
        ZeroTable((Ball.exact(13.0),), "computed", 20.0)  # first zero too low
    with pytest.raises(DomainError):
        ZeroTable((), "made_up", 20.0)  # unknown source
    empty = ZeroTable((), "computed", 14.0)
    assert len(empty) == 0


# -- counting ----------------------------------------------------------------


def test_L_at_two_pi():
    # L(2 pi) = 1 (log 1 - 1) + 7/8 = -1/8
    assert L_of(ball_two_pi()).contains(Fraction(-1, 8))


def test_count_N(table_1000):
    assert count_N(table_1000, 14.0) == 0
    assert count_N(table_1000, 20.0) == 1
    assert count_N(table_1000, 100.0) == 29
    assert count_N(table_1000, 1000.0) == 649


def test_count_N_half_weight_on_zero(table_1000):
    n = count_N(table_1000, float(table_1000.ordinates[0].mid))
    assert n == Fraction(1, 2)
    assert n.ambiguous
    n3 = count_N(table_1000, float(table_1000.ordinates[2].mid))
    assert n3 == Fraction(5, 2)


def test_Q_of(table_1000):
    # Q(100) = 29 - L(100)
    q = Q_of(table_1000, Ball.exact(100.0))
    l100 = L_of(Ball.exact(100.0))
    assert (q + l100).contains(29)
    assert abs(float(q.mid)) < 1.0  # fluctuation is O(1) at this height


def test_Q_of_ambiguous_on_zero(table_1000):
    g1 = table_1000.ordinates[0]
    with pytest.raises(AmbiguousQueryError):
        Q_of(table_1000, Ball(g1.mid, g1.rad * 2))


def test_Q_of_beyond_height(table_1000):
    with pytest.raises(DomainError):
        Q_of(table_1000, Ball.exact(2000.0))


# -- import / export -----------------------------------------------------------


def test_roundtrip(tmp_path, table_1000):
    path = tmp_path / "zeros.tsv"
    write_zeros(table_1000, path)
    back = import_zeros(path)
    assert len(back) == len(table_1000)
    assert back.source == "imported"
    for a, b in zip(table_1000.ordinates, back.ordinates):
        assert a.intersects(b)
    # imported table still answers the same count queries
    assert count_N(back, 100.0) == 29


def test_import_plain_ordinate_column(tmp_path):
    path = tmp_path / "plain.txt"
    path.write_text(
        "# comment\n14.134725141734694\n21.022039638771555\n25.010857580145689\n"
    )
    table = import_zeros(path)
    assert len(table) == 3
    assert table.ordinates[0].contains(GAMMA[0])


def test_import_rejects_garbage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("14.1347 foo bar\n")
    with pytest.raises(FileFormatError):
        import_zeros(path)
    path.write_text("fourteen\n")
    with pytest.raises(FileFormatError):
        import_zeros(path)
    path.write_text("14.134725141734694\tnot_a_radius\n")
    with pytest.raises(FileFormatError):
        import_zeros(path)
    path.write_text("")
    with pytest.raises(FileFormatError):
        import_zeros(path)


def test_import_rejects_unsorted(tmp_path):
    path = tmp_path / "swap.txt"
    path.write_text("21.022039638771555\n14.134725141734694\n")
    with pytest.raises(FileFormatError):
        import_zeros(path)


def test_import_rejects_missing_zero(tmp_path):
    # gamma_2 absent: the counting formula sees 3 zeros where the file has 2
    path = tmp_path / "gap.txt"
    path.write_text("14.134725141734694\n25.010857580145689\n")
    with pytest.raises(CompletenessError):
        import_zeros(path)


def test_import_does_not_trust_tiny_radii(tmp_path):
    # a claimed radius is kept, not tightened
    path = tmp_path / "wide.txt"
    path.write_text("14.134725141734694\t1e-3\n21.022039638771555\t1e-3\n")
    table = import_zeros(path)
    assert all(g.rad >= 1e-3 for g in table.ordinates)
