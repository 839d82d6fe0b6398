"""Self-contained Gamma function on real balls.

Algorithm: raise the argument until it exceeds a precision-dependent
threshold using Gamma(z) = Gamma(z+m) / (z (z+1) ... (z+m-1)), then evaluate
the Stirling series for log Gamma with its classical rigorous remainder: for
real w > 0 the error after the term with B_{2K} is bounded in magnitude by
the first omitted term.  Arguments left of 1/2 go through the reflection
formula.  Everything stays in ball arithmetic; exact rational inputs keep
exact rational bookkeeping for the raising product and the reflection angle.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import balls
from .balls import Ball, DomainError, PrecCtx
from .exact import PoleError

# ---------------------------------------------------------------------------
# Bernoulli numbers (exact, cached)
# ---------------------------------------------------------------------------

_bernoulli: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from the defining recurrence (cached)."""
    while len(_bernoulli) <= n:
        m = len(_bernoulli)
        if m % 2 == 1:
            _bernoulli.append(Fraction(0))
            continue
        acc = Fraction(0)
        binom = 1
        for j in range(m):
            acc += binom * _bernoulli[j]
            binom = binom * (m + 1 - j) // (j + 1)
        _bernoulli.append(-acc / (m + 1))
    return _bernoulli[n]


# ---------------------------------------------------------------------------
# log Gamma via Stirling with rigorous remainder
# ---------------------------------------------------------------------------


def _ln_sqrt_two_pi(W: int) -> Ball:
    return balls.log(balls.pi(W) + balls.pi(W), W).mul_fraction(Fraction(1, 2))


def _log_gamma_stirling(w: Ball, w_lo: Fraction, W: int) -> Ball:
    """log Gamma(w) for w >= threshold; w_lo is an exact positive lower bound."""
    lnw = balls.log(w, W)
    total = (w - Fraction(1, 2)) * lnw - w + _ln_sqrt_two_pi(W)
    winv = balls.inv(w, W)
    winv2 = winv * winv
    wpow = winv  # w^(1-2k) for k = 1
    wlo_pow = w_lo  # w_lo^(2k-1)
    k = 1
    while True:
        coeff = bernoulli(2 * k) / ((2 * k) * (2 * k - 1))
        total = total + wpow.mul_fraction(coeff)
        # rigorous remainder bound: first omitted term at the lower endpoint
        k += 1
        wlo_pow *= w_lo * w_lo
        bound = abs(bernoulli(2 * k)) / ((2 * k) * (2 * k - 1) * wlo_pow)
        if bound < Fraction(1, 1 << (W + 8)):
            total = total.widen(bound)
            return total
        wpow = wpow * winv2
        if k > 2 * W:  # pragma: no cover - defensive
            raise balls.PrecisionError("Stirling series did not reach tolerance")


def _raise_threshold(W: int) -> int:
    return max(8, (2 * W) // 5)


def _gamma_positive(z: Ball, z_frac: Fraction | None, W: int) -> Ball:
    """Gamma for balls with strictly positive lower endpoint."""
    z_lo = z_frac if z_frac is not None else z.lower()
    thr = _raise_threshold(W)
    m = max(0, math.ceil(thr - z_lo))
    if z_frac is not None:
        w = Ball.from_fraction(z_frac + m, W)
        w_lo = z_frac + m
        prod = Fraction(1)
        for i in range(m):
            prod *= z_frac + i
        lg = _log_gamma_stirling(w, w_lo, W)
        g = balls.exp(lg, W)
        return g.mul_fraction(1 / prod) if m else g
    w = z + m
    w_lo = z.lower() + m
    lg = _log_gamma_stirling(Ball(w.man, w.exp, w.rad, W), w_lo, W)
    g = balls.exp(lg, W)
    if m:
        prod = Ball.exact_int(1, W)
        for i in range(m):
            prod = prod * (z + i)
        g = g / prod
    return g


def gamma_real(z: Ball | Fraction | int, ctx: PrecCtx) -> Ball:
    """Enclosure of Gamma(z) for real z away from the poles 0, -1, -2, ...

    Exact rational arguments keep the raising product and reflection angle
    exact; ball arguments must not enclose a pole (PoleError otherwise).
    """
    W = ctx.working_bits
    if isinstance(z, (Fraction, int)):
        q = Fraction(z)
        if q.denominator == 1 and q <= 0:
            raise PoleError(f"Gamma pole at {q}")
        if q >= Fraction(1, 2):
            out = _gamma_positive(Ball.from_fraction(q, W), q, W)
        else:
            # reflection: Gamma(q) = pi / (sin(pi q) * Gamma(1 - q))
            s = balls.sin_pi_fraction(q, W)
            g1 = _gamma_positive(Ball.from_fraction(1 - q, W), 1 - q, W)
            out = balls.pi(W) / (s * g1)
        return out.round_to(ctx.working_bits)

    lo, hi = z.lower(), z.upper()
    if lo > 0:
        return _gamma_positive(z, None, W).round_to(W)
    if hi < Fraction(1, 2):
        n_hi = math.floor(hi)
        n_lo = math.ceil(lo)
        if n_lo <= min(0, n_hi):
            raise PoleError("Gamma ball encloses a nonpositive integer")
        s = balls.sin(balls.pi(W) * z, W)
        if s.contains_zero():
            raise PoleError("Gamma reflection: sin(pi z) not bounded away from 0")
        g1 = _gamma_positive(1 - z, None, W)
        return (balls.pi(W) / (s * g1)).round_to(W)
    raise PoleError("Gamma ball spans the pole at 0")


def pochhammer_num(x: Ball | Fraction | int, n: int, ctx: PrecCtx) -> Ball:
    """Rising factorial (x, n) = x (x+1) ... (x+n-1); n = 0 gives exactly 1."""
    if n < 0:
        raise ValueError("pochhammer count must be nonnegative")
    W = ctx.working_bits
    if isinstance(x, (Fraction, int)):
        prod = Fraction(1)
        q = Fraction(x)
        for i in range(n):
            prod *= q + i
        return Ball.from_fraction(prod, W)
    out = Ball.exact_int(1, W)
    for i in range(n):
        out = out * (x + i)
    return out


def factorial_ball(n: int, ctx: PrecCtx) -> Ball:
    return Ball.exact_int(math.factorial(n), ctx.working_bits)
