"""Validated Euler-integral evaluation."""

from fractions import Fraction as F

import pytest

from f1closed.balls import DomainError, PrecCtx
from f1closed.hyper import ParamsF1, eval_f1_double_series
from f1closed.quadrature import (
    Factor,
    eval_f1_integral,
    f1_integral_valid,
    integrate_factor_product,
)
from f1closed.tables import ROWS_BY_ID

CTX = PrecCtx.from_digits(40)


def test_polynomial_integral_exact():
    # int_0^1 t^2 (1-t) dt = 1/12
    factors = [
        Factor(F(0), F(1), 1, F(2)),
        Factor(F(1), F(-1), 1, F(1)),
    ]
    val = integrate_factor_product(factors, F(0), F(1), 160, F(1, 10**30))
    assert val.contains(F(1, 12))


def test_rational_power_integral():
    # int_0^1 (1+t)^-2 dt = 1/2
    factors = [Factor(F(1), F(1), 1, F(-2))]
    val = integrate_factor_product(factors, F(0), F(1), 160, F(1, 10**30))
    assert val.contains(F(1, 2))


def test_sign_changing_polynomial_factor():
    # int_0^1 (1 - 2t)^2 dt = 1/3; the factor vanishes at t = 1/2
    factors = [Factor(F(1), F(-2), 1, F(2))]
    val = integrate_factor_product(factors, F(0), F(1), 160, F(1, 10**30))
    assert val.contains(F(1, 3))


def test_beta_integral_cancels_prefactor():
    """x = y = 0: the Euler integral is the Beta integral, so F1 = 1."""
    r = eval_f1_integral(ParamsF1(F(1, 3), F(1, 5), F(1, 7), F(3, 2)), F(0), F(0), CTX)
    assert r.value.contains(1)
    assert r.value.rad_fraction() < F(1, 10**35)


def test_integral_matches_series():
    p = ParamsF1(F(2, 3), F(5, 6), F(1, 3), F(7, 6))
    ri = eval_f1_integral(p, F(1, 81), F(1, 6), CTX)
    rs = eval_f1_double_series(p, F(1, 81), F(1, 6), CTX)
    assert (ri.value - rs.value).contains_zero()


def test_integral_outside_bidisk_ratio_oracle():
    """x = -25/2 is far outside the series domain; the certified two-term
    ratio of the family provides the independent check."""
    row = ROWS_BY_ID["B.2"]
    a0 = F(1, 2)
    p0 = ParamsF1(*row.params_at(a0))
    p1 = ParamsF1(*row.params_at(a0 + 1))
    f0 = eval_f1_integral(p0, row.x, row.y, CTX)
    f1 = eval_f1_integral(p1, row.x, row.y, CTX)
    expected = row.ratio_expected.eval({"a": a0})
    assert (f1.value / f0.value - expected).contains_zero()


def test_integral_validity_checks():
    # gamma > alpha > 0 violated
    p = ParamsF1(F(3, 2), F(1, 2), F(1, 2), F(1, 2))
    assert f1_integral_valid(p, F(1, 3), F(1, 4)) is not None
    with pytest.raises(DomainError):
        eval_f1_integral(p, F(1, 3), F(1, 4), CTX)
    # interior root with non-integer exponent (D.2-style, y = 16)
    p2 = ParamsF1(F(1, 4), F(3, 4), F(1, 4), F(3, 4))
    assert f1_integral_valid(p2, F(16, 25), F(16)) is not None
    # interior root with polynomial exponent is fine
    p3 = ParamsF1(F(1, 4), F(3, 4), F(-2), F(3, 4))
    assert f1_integral_valid(p3, F(16, 25), F(16, 15)) is None


def test_integral_refinement():
    p = ParamsF1(F(1, 2), F(1, 3), F(1, 5), F(5, 4))
    lo = eval_f1_integral(p, F(1, 4), F(-1, 3), PrecCtx.from_digits(20))
    hi = eval_f1_integral(p, F(1, 4), F(-1, 3), PrecCtx.from_digits(40))
    assert lo.value.overlaps(hi.value)
    assert hi.value.rad_fraction() < lo.value.rad_fraction()
