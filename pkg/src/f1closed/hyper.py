"""Rigorous evaluation of Gauss 2F1 and Appell F1 series.

All series run in fixed-point integer arithmetic at a working scale 2^-W:
terms are integers T ~ t*2^W updated by exact rational term ratios with a
one-ulp floor rounding per step, and an integer error accumulator that is
propagated through the same ratios.  Truncation uses certified geometric
bounds: beyond an index where all Pochhammer factors are positive, the term
ratio (a+n)(b+n)x / ((c+n)(1+n)) is bounded by |x| * B1(N) * B2(N) with
B(N) = max(1, (p+N)/(q+N)), which is monotone in n.  The F1 double series
adds the same bound across rows: the absolute row sums S_n satisfy
S_{n+1} <= rho(N) * S_n for n >= N, giving a two-dimensional tail bound.

Methods beyond direct summation: Gauss's summation at x=1, the connection
formula at argument 1-x, the quadratic transformation into c = 2b, the
finite reduction when a numerator parameter is a nonpositive integer (valid
beyond the bi-disk of convergence), and the Euler integral (quadrature.py).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import balls
from .balls import Ball, DomainError, PrecCtx, PrecisionError
from .exact import PoleError
from .gammafn import gamma_real

_STOP_EVERY = 64
_STOP_ULPS = 1 << 20  # tails are cut once provably below this many 2^-W ulps
_HARD_CAP = 60_000_000


def _is_nonpos_int(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


@dataclass(frozen=True)
class Params2F1:
    """Parameters (a, b; c) with c not a nonpositive integer."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if _is_nonpos_int(self.c):
            raise DomainError(f"2F1 parameter c = {self.c} is a nonpositive integer")


@dataclass(frozen=True)
class ParamsF1:
    """Parameters (alpha; beta1, beta2; gamma) with gamma not 0, -1, -2, ..."""

    alpha: Fraction
    beta1: Fraction
    beta2: Fraction
    gamma: Fraction

    def __post_init__(self):
        if _is_nonpos_int(self.gamma):
            raise DomainError(
                f"F1 parameter gamma = {self.gamma} is a nonpositive integer"
            )

    def swapped(self) -> "ParamsF1":
        """The symmetric parameter set (beta1 <-> beta2); swap x and y too."""
        return ParamsF1(self.alpha, self.beta2, self.beta1, self.gamma)


@dataclass(frozen=True)
class EvalResult:
    value: Ball
    terms_used: int
    method: str


# ---------------------------------------------------------------------------
# fixed-point series kernel
# ---------------------------------------------------------------------------


def _ratio_sup(
    a: Fraction, b: Fraction, c: Fraction, absx: Fraction, n: int
) -> Fraction | None:
    """Certified bound for sup_{m >= n} |t_{m+1}/t_m|, or None if not yet valid.

    Valid once a+n, b+n, c+n > 0; uses the better of the two pairings of
    numerator against denominator factors.
    """
    if a + n <= 0 or b + n <= 0 or c + n <= 0:
        return None
    one = Fraction(1)
    r1 = max(one, (a + n) / (c + n)) * max(one, (b + n) / (n + 1))
    r2 = max(one, (b + n) / (c + n)) * max(one, (a + n) / (n + 1))
    return absx * min(r1, r2)


def _sum_2f1_kernel(
    a: Fraction,
    b: Fraction,
    c: Fraction,
    x: Fraction,
    W: int,
    T0: int,
    E0: int,
    stop_budget: int = _STOP_ULPS,
) -> tuple[int, int, int, int, int, bool]:
    """Sum_{m>=0} t_m with t_0 = T0*2^-W exactly (E0 ulp error on T0).

    Returns (S, ES, AS, terms, tail_ulps, terminated):
      S   signed sum in 2^-W units,
      ES  accumulated rounding-error bound in ulps,
      AS  upper bound on sum of |t_m| in ulps (for outer double-series bounds),
      tail_ulps certified bound for the omitted tail,
      terminated True when the series terminated exactly (zero factor).
    """
    an, ad = a.numerator, a.denominator
    bn, bd = b.numerator, b.denominator
    cn, cd = c.numerator, c.denominator
    xn, xd = x.numerator, x.denominator
    Kn = xn * cd
    Kd = ad * bd * xd
    U, V, Wc = an, bn, cn
    T, E = T0, E0
    S, ES = T, E
    AS = abs(T) + E
    absx = abs(x)
    n = 0
    while True:
        num = U * V * Kn
        den = Wc * (n + 1) * Kd
        if num == 0:
            return S, ES, AS, n + 1, 0, True
        T = (T * num) // den
        E = (E * abs(num) + abs(den) - 1) // abs(den) + 1
        n += 1
        U += ad
        V += bd
        Wc += cd
        S += T
        ES += E
        AS += abs(T) + E
        if n % _STOP_EVERY == 0:
            r = _ratio_sup(a, b, c, absx, n)
            if r is not None and r < 1:
                rn, rd = r.numerator, r.denominator
                lhs = (abs(T) + E) * rn
                den_gap = rd - rn
                if lhs <= stop_budget * den_gap:
                    # tail <= |t_n| r/(1-r), returned exactly (ceil) in ulps
                    tail = -((-lhs) // den_gap) + 1
                    return S, ES, AS, n + 1, tail, False
        if n > _HARD_CAP:
            raise PrecisionError("2F1 series exceeded the iteration cap")


def _near_one_guard_bits(*args: Fraction) -> int:
    """Extra guard bits for arguments close to 1: the per-term error
    accumulator reaches a steady state ~ 1/(1-|x|) ulps, and the certified
    tail multiplies by another 1/(1-|x|)."""
    g = 0
    for x in args:
        ax = abs(x)
        if Fraction(1, 2) < ax < 1:
            g = max(g, (1 - ax).denominator.bit_length() - (1 - ax).numerator.bit_length())
    return 2 * g + 8


def _series_2f1_ball(p: Params2F1, x: Fraction, W: int) -> tuple[Ball, int]:
    extra = _near_one_guard_bits(x)
    W2 = W + extra
    S, ES, _, terms, tail, _ = _sum_2f1_kernel(
        p.a, p.b, p.c, x, W2, 1 << W2, 0, stop_budget=_STOP_ULPS << extra
    )
    return Ball(S, -W2, ES + tail, W2), terms


def _terminating_index(p: Params2F1) -> int | None:
    """Smallest termination order when a or b is a nonpositive integer."""
    cands = [int(-q) for q in (p.a, p.b) if _is_nonpos_int(q)]
    return min(cands) if cands else None


def _exact_terminating_2f1(p: Params2F1, x: Fraction) -> Fraction:
    N = _terminating_index(p)
    assert N is not None
    total = Fraction(1)
    term = Fraction(1)
    for n in range(N):
        denom = (p.c + n) * (n + 1)
        if denom == 0:
            raise PoleError("terminating 2F1 hit a zero denominator factor")
        term *= (p.a + n) * (p.b + n) * x / denom
        total += term
    return total


def eval_2f1_series(
    p: Params2F1,
    x: Fraction,
    ctx: PrecCtx,
    *,
    allow_transform: bool = True,
) -> EvalResult:
    """2F1 by direct series with a certified geometric tail bound.

    Terminating cases (a or b a nonpositive integer) are summed exactly in
    rational arithmetic.  For c-a-b <= -1 the Euler transformation
    2F1(a,b;c;x) = (1-x)^(c-a-b) 2F1(c-a, c-b; c; x) is applied first: it
    preserves the value exactly and turns slowly-diverging-then-converging
    term profiles into fast decay (essential when b grows with a terminating
    outer sum).
    """
    x = Fraction(x)
    N = _terminating_index(p)
    if N is not None:
        val = _exact_terminating_2f1(p, x)
        return EvalResult(
            Ball.from_fraction(val, ctx.working_bits), N + 1, "terminating"
        )
    if abs(x) >= 1:
        raise DomainError(f"2F1 series divergent at x = {x}")
    d = p.c - p.a - p.b
    if allow_transform and d <= -1:
        inner = eval_2f1_series(
            Params2F1(p.c - p.a, p.c - p.b, p.c), x, ctx, allow_transform=False
        )
        base = Fraction(1) - x
        if d.denominator == 1:
            val = inner.value.mul_fraction(base ** int(d))
        else:
            W = ctx.working_bits
            val = inner.value * balls.pow_rat(Ball.from_fraction(base, W), d, W)
        return EvalResult(val, inner.terms_used, "series")
    W = ctx.working_bits + 32
    val, terms = _series_2f1_ball(p, x, W)
    return EvalResult(val.round_to(ctx.working_bits), terms, "series")


def eval_2f1_ball_params(
    a: Ball, b: Ball, c: Ball, x: Fraction, ctx: PrecCtx
) -> EvalResult:
    """2F1 with ball-valued parameters (slow generic path).

    The tail bound uses the parameter upper endpoints; c must stay away from
    nonpositive integers over its whole ball.
    """
    x = Fraction(x)
    if abs(x) >= 1:
        raise DomainError(f"2F1 series divergent at x = {x}")
    W = ctx.working_bits + 32
    term = Ball.exact_int(1, W)
    total = term
    a_up, b_up = a.upper(), b.upper()
    c_lo = c.lower()
    absx = abs(x)
    n = 0
    while True:
        denom = (c + n) * (n + 1)
        if denom.contains_zero():
            raise PoleError("2F1 ball parameter c passes through a pole")
        term = term * (a + n) * (b + n) / denom
        term = term.mul_fraction(x)
        total = total + term
        n += 1
        if n % 16 == 0 and a_up + n > 0 and b_up + n > 0 and c_lo + n > 0:
            one = Fraction(1)
            r = (
                absx
                * max(one, (a_up + n) / (c_lo + n))
                * max(one, (b_up + n) / (n + 1))
            )
            if r < 1:
                t_hi = abs(term.mid_fraction()) + term.rad_fraction()
                tail = t_hi * r / (1 - r)
                if tail < Fraction(1, 1 << (W - 8)):
                    total = total.widen(tail)
                    return EvalResult(total.round_to(ctx.working_bits), n + 1, "series")
        if n > _HARD_CAP:  # pragma: no cover - defensive
            raise PrecisionError("2F1 ball series exceeded the iteration cap")


# ---------------------------------------------------------------------------
# Gauss summation, connection formula, quadratic transformation
# ---------------------------------------------------------------------------


def gauss_sum(p: Params2F1, ctx: PrecCtx) -> Ball:
    """2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b))."""
    if p.c - p.a - p.b <= 0:
        raise DomainError("Gauss summation requires c - a - b > 0")
    num = gamma_real(p.c, ctx) * gamma_real(p.c - p.a - p.b, ctx)
    den = gamma_real(p.c - p.a, ctx) * gamma_real(p.c - p.b, ctx)
    return num / den


def eval_2f1_connection(p: Params2F1, x: Fraction, ctx: PrecCtx) -> EvalResult:
    """2F1 at x from series at 1-x via the two-term connection formula.

    u1 = G(c)G(c-a-b)/(G(c-a)G(c-b)) * 2F1(a,b; a+b+1-c; 1-x)
       + G(c)G(a+b-c)/(G(a)G(b)) * (1-x)^(c-a-b) 2F1(c-a,c-b; c+1-a-b; 1-x)

    Requires 0 < x <= 1 and c-a-b not an integer (except x = 1 with
    c-a-b > 0, where the formula degenerates to Gauss's summation).
    """
    x = Fraction(x)
    d = p.c - p.a - p.b
    if x == 1:
        return EvalResult(gauss_sum(p, ctx), 0, "gauss")
    if not 0 < x < 1:
        raise DomainError("connection formula needs 0 < x <= 1")
    if d.denominator == 1:
        raise DomainError("connection formula degenerates for integer c-a-b")
    one_m_x = 1 - x
    gc = gamma_real(p.c, ctx)
    coef2 = gc * gamma_real(d, ctx) / (gamma_real(p.c - p.a, ctx) * gamma_real(p.c - p.b, ctx))
    coef6 = gc * gamma_real(-d, ctx) / (gamma_real(p.a, ctx) * gamma_real(p.b, ctx))
    u2 = eval_2f1_series(Params2F1(p.a, p.b, p.a + p.b + 1 - p.c), one_m_x, ctx)
    u6 = eval_2f1_series(Params2F1(p.c - p.a, p.c - p.b, p.c + 1 - p.a - p.b), one_m_x, ctx)
    W = ctx.working_bits
    pref = balls.pow_rat(Ball.from_fraction(one_m_x, W), d, W)
    val = coef2 * u2.value + coef6 * pref * u6.value
    return EvalResult(
        val.round_to(ctx.working_bits),
        u2.terms_used + u6.terms_used,
        "connection",
    )


@dataclass(frozen=True)
class QuadraticTransform:
    """2F1(a,b;2b;x) rewritten through argument (x/(2-x))^2.

    value = (1-x)^e1 (1-x/2)^e2 * 2F1(params; x_new) with exponents
    e1 = b-a, e2 = a-2b.
    """

    params: Params2F1
    x_new: Fraction
    exp_one_minus_x: Fraction
    exp_one_minus_half_x: Fraction

    def prefactor(self, x: Fraction, ctx: PrecCtx) -> Ball:
        W = ctx.working_bits
        f1 = balls.pow_rat(Ball.from_fraction(1 - x, W), self.exp_one_minus_x, W)
        f2 = balls.pow_rat(
            Ball.from_fraction(1 - x / 2, W), self.exp_one_minus_half_x, W
        )
        return f1 * f2


def goursat_transform(a: Fraction, b: Fraction, x: Fraction) -> QuadraticTransform:
    """The c = 2b quadratic transformation (Goursat):

        2F1(a,b;2b;x) = (1-x)^(b-a) (1-x/2)^(a-2b)
                        * 2F1(b-a/2, b+1/2-a/2; b+1/2; (x/(2-x))^2)
    """
    a, b, x = Fraction(a), Fraction(b), Fraction(x)
    if x == 2:
        raise DomainError("transformation undefined at x = 2")
    xn = (x / (2 - x)) ** 2
    params = Params2F1(b - a / 2, b + Fraction(1, 2) - a / 2, b + Fraction(1, 2))
    return QuadraticTransform(params, xn, b - a, a - 2 * b)


# ---------------------------------------------------------------------------
# Appell F1
# ---------------------------------------------------------------------------


def _f1_preconditions(p: ParamsF1, x: Fraction, y: Fraction) -> None:
    x_ok = abs(x) < 1 or _is_nonpos_int(p.beta1) or _is_nonpos_int(p.alpha)
    y_ok = abs(y) < 1 or _is_nonpos_int(p.beta2) or _is_nonpos_int(p.alpha)
    if not (x_ok and y_ok):
        raise DomainError(
            f"F1 double series divergent at (x, y) = ({x}, {y}) "
            f"with parameters {p}"
        )


def _f1_double_kernel(
    p: ParamsF1, x: Fraction, y: Fraction, W: int, budget: int
) -> tuple[int, int, int]:
    """Row-major double sum; returns (S, rad_ulps, terms)."""
    al, b1, b2, g = p.alpha, p.beta1, p.beta2, p.gamma
    aln, ald = al.numerator, al.denominator
    b2n, b2d = b2.numerator, b2.denominator
    gn, gd = g.numerator, g.denominator
    yn, yd = y.numerator, y.denominator
    Kn_y = yn * gd
    Kd_y = ald * b2d * yd
    absy = abs(y)

    T0, E0 = 1 << W, 0
    S, ES = 0, 0
    terms = 0
    n = 0
    Ua, Vb2, Wg = aln, b2n, gn
    while True:
        Srow, ESrow, ASrow, trow, tailrow, _ = _sum_2f1_kernel(
            al + n, b1, g + n, x, W, T0, E0, stop_budget=budget
        )
        S += Srow
        ES += ESrow + tailrow
        terms += trow
        row_abs = ASrow + tailrow

        # row-transition factor (alpha+n)(beta2+n) y / ((gamma+n)(1+n))
        num = Ua * Vb2 * Kn_y
        den = Wg * (n + 1) * Kd_y
        if num == 0:
            return S, ES + 4, terms
        # certified bound on all later rows once factors are positive
        if al + n > 0 and g + n > 0 and b2 + n > 0:
            one = Fraction(1)
            rho = (
                absy
                * max(one, (al + n) / (g + n))
                * max(one, (b2 + n) / (n + 1))
            )
            if rho < 1:
                rn, rd = rho.numerator, rho.denominator
                lhs = row_abs * rn
                den_gap = rd - rn
                if lhs <= budget * den_gap:
                    rows_tail = -((-lhs) // den_gap) + 1
                    return S, ES + rows_tail, terms
        T0 = (T0 * num) // den
        E0 = (E0 * abs(num) + abs(den) - 1) // abs(den) + 1
        n += 1
        Ua += ald
        Vb2 += b2d
        Wg += gd
        row_abs_prev = row_abs
        if terms > _HARD_CAP:
            raise PrecisionError("F1 double series exceeded the iteration cap")


def eval_f1_double_series(
    p: ParamsF1, x: Fraction, y: Fraction, ctx: PrecCtx
) -> EvalResult:
    """Appell F1 by the double series with a rigorous two-dimensional tail."""
    x, y = Fraction(x), Fraction(y)
    _f1_preconditions(p, x, y)
    extra = _near_one_guard_bits(x, y)
    W = ctx.working_bits + 32 + extra
    budget = _STOP_ULPS << extra
    S, rad, terms = _f1_double_kernel(p, x, y, W, budget)
    return EvalResult(
        Ball(S, -W, rad, W).round_to(ctx.working_bits), terms, "double_series"
    )


def f1_reduce_beta_zero(p: ParamsF1) -> Params2F1:
    """F1(alpha; beta1, 0; gamma; x, y) = 2F1(alpha, beta1; gamma; x)."""
    if p.beta2 != 0:
        raise DomainError(f"reduction requires beta2 = 0 exactly, got {p.beta2}")
    return Params2F1(p.alpha, p.beta1, p.gamma)


def eval_f1_terminating(
    p: ParamsF1, x: Fraction, y: Fraction, ctx: PrecCtx, *, extra_bits: int = 0
) -> EvalResult:
    """F1 as a finite sum over the terminating direction.

    With beta2 = -J a nonpositive integer,

        F1 = sum_{n=0..J} (alpha,n)(beta2,n)/((gamma,n) n!) y^n
             * 2F1(alpha+n, beta1; gamma+n; x),

    which stays valid for |y| >= 1.  If instead beta1 terminates, the
    symmetric swap is applied first.  The inner series go through the Euler
    transformation, which removes the catastrophic term growth when the
    parameters scale with the termination order.  Working precision is
    raised automatically to absorb the cancellation between outer terms.
    """
    x, y = Fraction(x), Fraction(y)
    if not _is_nonpos_int(p.beta2):
        if _is_nonpos_int(p.beta1):
            return eval_f1_terminating(p.swapped(), y, x, ctx, extra_bits=extra_bits)
        raise DomainError("terminating evaluation needs a nonpositive-integer beta")
    if abs(x) >= 1 and not _is_nonpos_int(p.beta1) and not _is_nonpos_int(p.alpha):
        raise DomainError("inner 2F1 argument must satisfy |x| < 1")
    J = int(-p.beta2)

    W = ctx.working_bits + 32 + max(0, extra_bits)
    attempts = 0
    while True:
        inner_ctx = PrecCtx(W, ctx.target_digits)
        total = Ball(0, 0, 0, W)
        coeff = Fraction(1)
        peak_log2 = -(1 << 30)
        terms = 0
        for n in range(J + 1):
            if coeff != 0:
                inner = eval_2f1_series(
                    Params2F1(p.alpha + n, p.beta1, p.gamma + n), x, inner_ctx
                )
                piece = inner.value.mul_fraction(coeff)
                total = total + piece
                terms += inner.terms_used
                peak_log2 = max(peak_log2, piece.mag_upper_log2())
            denom = (p.gamma + n) * (n + 1)
            if denom == 0:
                raise PoleError("terminating F1 hit a pole of an inner coefficient")
            coeff *= (p.alpha + n) * (p.beta2 + n) * y / denom
        # did cancellation destroy the target accuracy?
        good = total.rad_log2() <= -(
            math.ceil(ctx.target_digits * math.log2(10)) + 16
        ) + max(0, total.mag_upper_log2())
        if good or attempts >= 6:
            return EvalResult(total.round_to(ctx.working_bits), terms, "terminating")
        deficit = peak_log2 - total.mag_upper_log2()
        W = W + max(64, deficit + 64)
        attempts += 1
