"""Certification of the closed-form families and numeric relation checks.

Exact side: specialize the contiguity relation of a table row at its
sextuple, shift a -> a+n, and certify that q10 and q01 vanish identically as
rational functions of (a, n); the surviving q00 at n = 0 must equal the
expected closed-form ratio exactly.  Numeric side: residuals of the
four-term relation at random convergent points, and spot checks of
F(a0+1)/F(a0) against the certified ratio wherever a series, terminating,
or integral route evaluates the family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .balls import Ball, DomainError, PrecCtx
from .contiguity import ContigRel, derive_contiguity
from .exact import Poly, RatF
from .hyper import (
    EvalResult,
    ParamsF1,
    _is_nonpos_int,
    eval_f1_double_series,
    eval_f1_terminating,
)
from .quadrature import eval_f1_integral, f1_integral_valid
from .tables import SextupleSpec

_SERIES_COST_CAP = 8_000_000


@dataclass(frozen=True)
class CaseCertificate:
    """Outcome of the exact vanishing certification for one table row."""

    row_id: str
    certified: bool
    q10n: RatF
    q01n: RatF
    ratio: RatF
    matches_expected: bool
    message: str


def specialize_shift_n(rel: ContigRel, s: SextupleSpec) -> tuple[RatF, RatF, RatF]:
    """(q10, q01, q00) of the row's family, shifted a -> a + n.

    Because the row's parameter slopes equal the shift components, the
    substitution par -> par + n*k of the generic coefficients coincides with
    a -> a + n after specialization.
    """
    q10s, q01s, q00s = rel.specialize(s.param_images())
    shift = {"a": Poly.var("a") + Poly.var("n")}
    return (q10s.subst(shift), q01s.subst(shift), q00s.subst(shift))


def check_case_vanishing(s: SextupleSpec) -> CaseCertificate:
    """Exact certificate that the row has a two-term closed form."""
    rel = derive_contiguity(s.shift)
    q10n, q01n, q00n = specialize_shift_n(rel, s)
    certified = q10n.is_zero() and q01n.is_zero()
    ratio = q00n.subst({"n": Poly.const(0)})
    matches = ratio == s.ratio_expected
    if certified and matches:
        msg = f"row {s.id}: certified; ratio {ratio}"
    elif not certified:
        msg = (
            f"row {s.id}: NOT certified; q10n = {q10n}, q01n = {q01n}"
        )
    else:
        msg = (
            f"row {s.id}: ratio mismatch; derived {ratio}, "
            f"expected {s.ratio_expected}"
        )
    return CaseCertificate(s.id, certified, q10n, q01n, ratio, matches, msg)


def numeric_four_term_check(
    rel: ContigRel, point: Mapping[str, Fraction], ctx: PrecCtx
) -> Ball:
    """Residual enclosure of the four-term relation at a convergent point."""
    x, y = Fraction(point["x"]), Fraction(point["y"])
    if abs(x) >= 1 or abs(y) >= 1:
        raise DomainError("four-term residual needs |x| < 1 and |y| < 1")
    al, b1, b2, g = (
        Fraction(point["a"]),
        Fraction(point["b1"]),
        Fraction(point["b2"]),
        Fraction(point["c"]),
    )
    k = rel.shift
    q10, q01, q00 = rel.eval_at(point)

    def f1(da, db1, db2, dc):
        p = ParamsF1(al + da, b1 + db1, b2 + db2, g + dc)
        return eval_f1_double_series(p, x, y, ctx).value

    vk = f1(k.k, k.l1, k.l2, k.m)
    v10 = f1(1, 1, 0, 1)
    v01 = f1(1, 0, 1, 1)
    v0 = f1(0, 0, 0, 0)
    return vk - (
        v10.mul_fraction(q10) + v01.mul_fraction(q01) + v0.mul_fraction(q00)
    )


def _series_cost_estimate(
    x: Fraction, y: Fraction, digits: int
) -> float:
    """Rough double-series term count (budgeting only)."""
    bits = digits * math.log(10)

    def n_of(arg: Fraction) -> float:
        a = abs(float(arg))
        if a == 0:
            return 1.0
        if a >= 1:
            return math.inf
        return bits / -math.log(a) + 32

    return n_of(x) * n_of(y)


def eval_family_value(s: SextupleSpec, a0: Fraction, ctx: PrecCtx) -> EvalResult:
    """F(a0) for a table row by the cheapest applicable rigorous route."""
    al, b1, b2, g = s.params_at(a0)
    p = ParamsF1(al, b1, b2, g)
    x, y = s.x, s.y
    if (_is_nonpos_int(b2) and abs(x) < 1) or (_is_nonpos_int(b1) and abs(y) < 1):
        return eval_f1_terminating(p, x, y, ctx)
    series_ok = abs(x) < 1 and abs(y) < 1
    integral_ok = f1_integral_valid(p, x, y) is None
    if series_ok and (
        _series_cost_estimate(x, y, ctx.target_digits) <= _SERIES_COST_CAP
        or not integral_ok
    ):
        return eval_f1_double_series(p, x, y, ctx)
    if integral_ok:
        return eval_f1_integral(p, x, y, ctx)
    raise DomainError(
        f"no evaluation route for row {s.id} at a = {a0} "
        f"(x = {x}, y = {y}, params = {p})"
    )


@dataclass(frozen=True)
class RatioCheck:
    row_id: str
    a0: Fraction
    ok: bool
    method: str
    diff: Ball


def closed_ratio_numeric_check(
    s: SextupleSpec, a0: Fraction, ctx: PrecCtx
) -> RatioCheck:
    """Does F(a0+1)/F(a0) match the certified ratio within the enclosures?"""
    f0 = eval_family_value(s, a0, ctx)
    f1 = eval_family_value(s, a0 + 1, ctx)
    ratio_val = s.ratio_expected.eval({"a": a0})
    diff = f1.value / f0.value - Ball.from_fraction(ratio_val, ctx.working_bits)
    return RatioCheck(
        s.id, a0, diff.contains_zero(), f"{f0.method}/{f1.method}", diff
    )
