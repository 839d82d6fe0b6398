"""2F1 / F1 evaluation: oracle values, identities between methods."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from f1closed import balls
from f1closed.balls import Ball, DomainError, PrecCtx
from f1closed.hyper import (
    Params2F1,
    ParamsF1,
    eval_2f1_ball_params,
    eval_2f1_connection,
    eval_2f1_series,
    eval_f1_double_series,
    eval_f1_terminating,
    f1_reduce_beta_zero,
    gauss_sum,
    goursat_transform,
)

CTX = PrecCtx.from_digits(50)
CTX60 = PrecCtx.from_digits(60)


def brute_f1(al, b1, b2, g, x, y, terms=60):
    """Independent float oracle: plain truncated double sum."""
    total = 0.0
    for m in range(terms):
        for n in range(terms - m):
            t = 1.0
            for i in range(m + n):
                t *= (al + i) / (g + i)
            for i in range(m):
                t *= (b1 + i) * x / (i + 1)
            for i in range(n):
                t *= (b2 + i) * y / (i + 1)
            total += t
    return total


def test_2f1_at_zero_is_one():
    r = eval_2f1_series(Params2F1(F(1, 3), F(2, 5), F(7, 6)), F(0), CTX)
    assert r.value.contains(1)


def test_2f1_80_81_is_nine_fifths():
    r = eval_2f1_series(Params2F1(F(1, 4), F(1, 2), F(3, 4)), F(80, 81), CTX60)
    assert r.value.contains(F(9, 5))
    assert r.value.rad_fraction() < F(1, 10**50)


def test_2f1_terminating_gosper_sample():
    r = eval_2f1_series(Params2F1(F(1, 2), F(-1), F(9, 2)), F(1, 4), CTX)
    assert r.method == "terminating"
    assert r.value.contains(F(35, 36))
    assert r.value.rad_fraction() < F(1, 10**40)


def test_2f1_divergent_rejected():
    with pytest.raises(DomainError):
        eval_2f1_series(Params2F1(F(1, 3), F(1, 2), F(5, 4)), F(3, 2), CTX)


def test_2f1_c_pole_rejected():
    with pytest.raises(DomainError):
        Params2F1(F(1, 2), F(1, 2), F(-2))


def test_euler_transform_agrees():
    """c-a-b <= -1 triggers the transformation; value must not move."""
    p = Params2F1(F(9, 4), F(7, 2), F(5, 4))
    direct = eval_2f1_series(p, F(1, 3), CTX, allow_transform=False)
    transformed = eval_2f1_series(p, F(1, 3), CTX)
    assert (direct.value - transformed.value).contains_zero()


def test_gauss_telescoping():
    assert gauss_sum(Params2F1(F(1), F(1), F(3)), CTX).contains(2)


def test_gauss_brute_series_oracle():
    """Partial sums of the series at x = 1 approach the Gamma formula."""
    val = gauss_sum(Params2F1(F(1, 2), F(3, 4), F(2)), CTX)
    total, term = 0.0, 1.0
    n = 0
    while n < 300_000:
        total += term
        term *= (0.5 + n) * (0.75 + n) / ((2.0 + n) * (1.0 + n))
        n += 1
    assert abs(float(val.mid_fraction()) - total) < 2e-3


def test_gauss_boundary_rejected():
    with pytest.raises(DomainError):
        gauss_sum(Params2F1(F(1, 2), F(1, 2), F(1)), CTX)


def test_gauss_series_limit_consistency():
    """Series at x = 1 - 2^-j approaches the Gauss value from below."""
    p = Params2F1(F(1, 4), F(1, 3), F(5, 2))
    target = gauss_sum(p, PrecCtx.from_digits(15))
    ctx = PrecCtx.from_digits(12)
    gaps = []
    for j in (4, 8, 12):
        v = eval_2f1_series(p, 1 - F(1, 2**j), ctx)
        gaps.append(abs(float((v.value - target).mid_fraction())))
    assert gaps[2] < gaps[1] < gaps[0]
    assert gaps[2] < 1e-3


def test_connection_matches_series():
    p = Params2F1(F(1, 3), F(2, 3), F(7, 6))
    direct = eval_2f1_series(p, F(5, 32), CTX)
    conn = eval_2f1_connection(p, F(5, 32), CTX)
    assert (direct.value - conn.value).contains_zero()
    assert conn.value.rad_fraction() < F(1, 10**45)


def test_connection_random_point():
    p = Params2F1(F(1, 5), F(1, 7), F(9, 5))
    direct = eval_2f1_series(p, F(9, 10), CTX)
    conn = eval_2f1_connection(p, F(9, 10), CTX)
    assert (direct.value - conn.value).contains_zero()


def test_connection_at_one_reduces_to_gauss():
    p = Params2F1(F(1, 4), F(1, 3), F(5, 2))
    conn = eval_2f1_connection(p, F(1), CTX)
    assert (conn.value - gauss_sum(p, CTX)).contains_zero()
    assert conn.method == "gauss"


def test_connection_integer_exponent_rejected():
    with pytest.raises(DomainError):
        eval_2f1_connection(Params2F1(F(1, 4), F(3, 4), F(2)), F(1, 2), CTX)


def test_goursat_parameters():
    tr = goursat_transform(F(3, 4), F(1, 2), F(1, 81))
    assert tr.params == Params2F1(F(1, 8), F(5, 8), F(1))
    assert tr.x_new == F(1, 25921)
    assert tr.exp_one_minus_x == F(-1, 4)
    assert tr.exp_one_minus_half_x == F(-1, 4)


def test_goursat_at_zero():
    tr = goursat_transform(F(1, 3), F(1, 5), F(0))
    assert tr.x_new == 0
    assert tr.prefactor(F(0), CTX).contains(1)


def test_goursat_value_preserved():
    for (a, b, x) in [(F(1, 3), F(1, 4), F(1, 10)), (F(2, 5), F(3, 7), F(1, 6))]:
        lhs = eval_2f1_series(Params2F1(a, b, 2 * b), x, CTX)
        tr = goursat_transform(a, b, x)
        rhs = tr.prefactor(x, CTX) * eval_2f1_series(tr.params, tr.x_new, CTX).value
        assert (lhs.value - rhs).contains_zero()


def test_f1_alpha_zero_is_one():
    p = ParamsF1(F(0), F(1, 3), F(1, 5), F(7, 6))
    assert eval_f1_double_series(p, F(1, 3), F(1, 4), CTX).value.contains(1)


def test_f1_divergent_rejected():
    with pytest.raises(DomainError):
        eval_f1_double_series(
            ParamsF1(F(1, 3), F(1, 5), F(1, 7), F(3, 2)), F(5, 4), F(1, 2), CTX
        )


@given(
    st.fractions(min_value=F(1, 6), max_value=2, max_denominator=8),
    st.fractions(min_value=F(1, 6), max_value=2, max_denominator=8),
    st.fractions(min_value=F(1, 6), max_value=2, max_denominator=8),
    st.fractions(min_value=F(-1, 3), max_value=F(1, 3), max_denominator=9),
    st.fractions(min_value=F(-1, 3), max_value=F(1, 3), max_denominator=9),
)
def test_f1_symmetry(al, b1, b2, xy1, xy2):
    """F1(al; b1, b2; g; x, y) = F1(al; b2, b1; g; y, x)."""
    g = al + 2  # keep gamma away from poles
    p = ParamsF1(al, b1, b2, g)
    lhs = eval_f1_double_series(p, xy1, xy2, CTX)
    rhs = eval_f1_double_series(p.swapped(), xy2, xy1, CTX)
    assert (lhs.value - rhs.value).contains_zero()


def test_reduction_beta2_zero():
    p = ParamsF1(F(1, 2), F(3, 4), F(0), F(1))
    red = f1_reduce_beta_zero(p)
    assert red == Params2F1(F(1, 2), F(3, 4), F(1))
    lhs = eval_f1_double_series(p, F(1, 81), F(1, 2), CTX)
    rhs = eval_2f1_series(red, F(1, 81), CTX)
    assert (lhs.value - rhs.value).contains_zero()


def test_reduction_rejects_nonzero_beta2():
    with pytest.raises(DomainError):
        f1_reduce_beta_zero(ParamsF1(F(1, 2), F(3, 4), F(10) ** -9, F(1)))


def test_terminating_n0_reduces_to_2f1():
    """beta2 = 0: the finite sum collapses to the inner 2F1 (value 9/5)."""
    p = ParamsF1(F(1, 4), F(1, 2), F(0), F(3, 4))
    r = eval_f1_terminating(p, F(80, 81), F(16, 15), CTX)
    assert r.value.contains(F(9, 5))


def test_terminating_known_value_with_brute_oracle():
    p = ParamsF1(F(5, 4), F(5, 2), F(-4), F(7, 4))
    r = eval_f1_terminating(p, F(80, 81), F(16, 15), CTX)
    assert r.value.contains(F(729, 3125))
    # independent float double sum (finite in n, truncated in m)
    approx = brute_f1(1.25, 2.5, -4.0, 1.75, 80 / 81, 16 / 15, terms=2500)
    assert abs(approx - 729 / 3125) < 1e-6


def test_terminating_beta2_minus_one_y_zero():
    p = ParamsF1(F(1, 3), F(2, 5), F(-1), F(4, 3))
    r = eval_f1_terminating(p, F(1, 7), F(0), CTX)
    direct = eval_2f1_series(Params2F1(F(1, 3), F(2, 5), F(4, 3)), F(1, 7), CTX)
    assert (r.value - direct.value).contains_zero()


def test_terminating_requires_nonpositive_beta():
    with pytest.raises(DomainError):
        eval_f1_terminating(
            ParamsF1(F(1, 3), F(2, 5), F(1, 5), F(4, 3)), F(1, 7), F(1, 2), CTX
        )


def test_method_agreement_random_points():
    random.seed(20240811)
    for _ in range(3):
        al = F(random.randint(1, 5), random.randint(2, 6))
        b1 = F(random.randint(1, 5), random.randint(2, 6))
        b2 = -F(random.randint(1, 3))
        g = al + F(random.randint(1, 4), 2)
        x = F(random.randint(1, 4), 9)
        y = F(random.randint(1, 4), 9)
        p = ParamsF1(al, b1, b2, g)
        series = eval_f1_double_series(p, x, y, CTX)
        term = eval_f1_terminating(p, x, y, CTX)
        assert (series.value - term.value).contains_zero()


def test_tail_soundness_via_refinement():
    """Coarser evaluation must enclose the finer one."""
    p = ParamsF1(F(2, 3), F(5, 6), F(1, 3), F(7, 6))
    lo = eval_f1_double_series(p, F(1, 81), F(1, 6), PrecCtx.from_digits(20))
    hi = eval_f1_double_series(p, F(1, 81), F(1, 6), PrecCtx.from_digits(60))
    assert lo.value.lower() <= hi.value.lower()
    assert hi.value.upper() <= lo.value.upper()
    assert hi.value.rad_fraction() < lo.value.rad_fraction()


def test_ball_params_match_exact():
    W = CTX.working_bits
    r1 = eval_2f1_ball_params(
        Ball.from_fraction(F(1, 3), W),
        Ball.from_fraction(F(1, 5), W),
        Ball.from_fraction(F(5, 4), W),
        F(1, 3),
        CTX,
    )
    r2 = eval_2f1_series(Params2F1(F(1, 3), F(1, 5), F(5, 4)), F(1, 3), CTX)
    assert (r1.value - r2.value).contains_zero()
