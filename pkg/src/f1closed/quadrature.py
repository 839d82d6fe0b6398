"""Validated integration of products of powers of linear-in-t^q factors.

The integrands appearing here all have the shape

    f(t) = prod_i (u_i + v_i * t^{q_i}) ^ {rho_i},      t in [0, 1],

with rational u, v, rho and small positive integer q (q > 1 appears after
the endpoint substitutions t = s^q and t = 1 - s^q that remove algebraic
singularities exactly).  Writing f = A * g with A the product of the
nonnegative-integer-power factors (a plain polynomial, allowed to vanish)
and g the rest (holonomic and sign-definite), Taylor coefficients of g on a
segment come from the first-order recurrence induced by D g' = N g, run once
at the rational midpoint and once over the whole segment as a ball; the
latter gives a rigorous Lagrange remainder through the K-th coefficient.
Adaptive bisection splits until each segment meets its share of the error
budget.

The Appell F1 Euler integral

    F1 = G(gamma)/(G(alpha)G(gamma-alpha)) *
         int_0^1 t^(alpha-1) (1-t)^(gamma-alpha-1) (1-x t)^-beta1 (1-y t)^-beta2 dt

is assembled on top (gamma > alpha > 0; non-integer-power factors must not
vanish inside (0,1), otherwise the point is out of domain).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import balls
from .balls import Ball, DomainError, PrecCtx, PrecisionError
from .gammafn import gamma_real
from .hyper import EvalResult, ParamsF1

_TAYLOR_K = 24  # even; Lagrange remainder uses coefficient K over the segment
_MAX_DEPTH = 64


@dataclass(frozen=True)
class Factor:
    """(u + v * t^q) ^ rho with rational data, q >= 1."""

    u: Fraction
    v: Fraction
    q: int
    rho: Fraction

    def is_poly_part(self) -> bool:
        return self.rho.denominator == 1 and self.rho >= 0


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _factor_poly(f: Factor) -> list[Fraction]:
    out = [Fraction(0)] * (f.q + 1)
    out[0] = f.u
    out[f.q] = f.v
    return out


def _poly_part_coeffs(poly_factors: list["Factor"]) -> list[Fraction]:
    out = [Fraction(1)]
    for f in poly_factors:
        base = _factor_poly(f)
        for _ in range(int(f.rho)):
            out = _poly_mul(out, base)
    return out


def _taylor_at(coeffs: list[Fraction], center: Ball, upto: int, W: int) -> list[Ball]:
    """Taylor coefficients p_i(center) = p^(i)(center)/i! for i <= upto."""
    n = len(coeffs)
    out = []
    for i in range(min(upto, n - 1) + 1):
        acc = Ball(0, 0, 0, W)
        for j in range(n - 1, i - 1, -1):
            acc = acc * center + Ball.from_fraction(coeffs[j] * math.comb(j, i), W)
        out.append(acc)
    if len(out) < upto + 1:
        out += [Ball(0, 0, 0, W)] * (upto + 1 - len(out))
    return out


class _NeedSplit(Exception):
    """Segment too wide for sign-definite factor enclosures; bisect."""


_REMAINDER_BITS = 128  # the Lagrange term only needs a few correct digits


class _RegionIntegrator:
    """Adaptive Taylor-model integration for one fixed factor list."""

    def __init__(self, factors: list[Factor], W: int):
        self.W = W
        self.rat = [f for f in factors if not f.is_poly_part()]
        self.polyi = [f for f in factors if f.is_poly_part()]
        self.A = _poly_part_coeffs(self.polyi)
        D = [Fraction(1)]
        for f in self.rat:
            D = _poly_mul(D, _factor_poly(f))
        N = [Fraction(0)]
        for i, f in enumerate(self.rat):
            dterm = [Fraction(0)] * f.q
            dterm[f.q - 1] = f.rho * f.q * f.v
            for j, g in enumerate(self.rat):
                if j != i:
                    dterm = _poly_mul(dterm, _factor_poly(g))
            if len(dterm) > len(N):
                N += [Fraction(0)] * (len(dterm) - len(N))
            for idx, val in enumerate(dterm):
                N[idx] += val
        self.D = D
        self.N = N

    def _g0(self, at: Ball, W: int) -> Ball:
        out = Ball.exact_int(1, W)
        for f in self.rat:
            base = (at**f.q).mul_fraction(f.v) + Ball.from_fraction(f.u, W)
            if base.is_positive():
                out = out * balls.pow_rat(base, f.rho, W)
            elif base.is_negative() and f.rho.denominator == 1:
                out = out * base ** int(f.rho)
            else:
                raise _NeedSplit()
        return out

    def _g_coeffs(self, center: Ball, upto: int, W: int) -> list[Ball]:
        Dh = _taylor_at(self.D, center, len(self.D) - 1, W)
        Nh = _taylor_at(self.N, center, len(self.N) - 1, W)
        d0 = Dh[0]
        if d0.contains_zero():
            raise _NeedSplit()
        g = [self._g0(center, W)]
        inv_d0 = balls.inv(d0, W)
        for k in range(upto):
            acc = Ball(0, 0, 0, W)
            for l in range(min(k, len(Nh) - 1) + 1):
                acc = acc + Nh[l] * g[k - l]
            for l in range(1, min(k + 1, len(Dh) - 1) + 1):
                acc = acc - Dh[l] * g[k + 1 - l].mul_fraction(Fraction(k + 1 - l))
            g.append(acc * inv_d0.mul_fraction(Fraction(1, k + 1)))
        return g

    def segment(self, lo: Fraction, hi: Fraction) -> Ball:
        W = self.W
        c = (lo + hi) / 2
        h = (hi - lo) / 2
        K = _TAYLOR_K
        cball = Ball.from_fraction(c, W)
        g_mid = self._g_coeffs(cball, K - 1, W)
        A_mid = _taylor_at(self.A, cball, K - 1, W)
        total = Ball(0, 0, 0, W)
        hball = Ball.from_fraction(h, W)
        h2 = hball * hball
        weight = hball.mul_fraction(Fraction(2))  # 2 h^(k+1) at k = 0
        for k in range(0, K, 2):
            fk = Ball(0, 0, 0, W)
            for i in range(k + 1):
                fk = fk + A_mid[i] * g_mid[k - i]
            total = total + fk * weight.mul_fraction(Fraction(1, k + 1))
            weight = weight * h2
        # Lagrange remainder: f_K(xi) for xi anywhere in the segment; only a
        # few digits of it matter, so the enclosure runs at low precision
        Wr = _REMAINDER_BITS
        X = balls.from_endpoints(lo, hi, Wr)
        gX = self._g_coeffs(X, K, Wr)
        A_X = _taylor_at(self.A, X, K, Wr)
        fK = Ball(0, 0, 0, Wr)
        for i in range(K + 1):
            fK = fK + A_X[i] * gX[K - i]
        wK = Fraction(2) * h ** (K + 1) / (K + 1)
        rem = balls.from_endpoints(fK.lower() * wK, fK.upper() * wK, W)
        return total + rem

    def integrate(self, lo: Fraction, hi: Fraction, eps: Fraction) -> Ball:
        total = Ball(0, 0, 0, self.W)
        width = hi - lo
        stack = [(lo, hi, 0)]
        while stack:
            a, b, depth = stack.pop()
            piece = None
            try:
                piece = self.segment(a, b)
                ok = piece.rad_fraction() <= eps * (b - a) / width
            except (_NeedSplit, ZeroDivisionError, DomainError, balls.PrecisionError):
                # enclosures over a too-wide segment can spuriously reach
                # zero or blow up; bisection always repairs that
                ok = False
            if ok:
                total = total + piece
                continue
            if depth >= _MAX_DEPTH:
                raise PrecisionError("validated quadrature failed to converge")
            mid = (a + b) / 2
            stack.append((a, mid, depth + 1))
            stack.append((mid, b, depth + 1))
        return total


def integrate_factor_product(
    factors: list[Factor], lo: Fraction, hi: Fraction, W: int, eps: Fraction
) -> Ball:
    """Adaptive validated integral of prod (u + v t^q)^rho over [lo, hi]."""
    return _RegionIntegrator(factors, W).integrate(lo, hi, eps)


# ---------------------------------------------------------------------------
# F1 Euler integral
# ---------------------------------------------------------------------------


def f1_integral_valid(p: ParamsF1, x: Fraction, y: Fraction) -> str | None:
    """None when the Euler integral applies; otherwise a reason string."""
    if not (p.gamma > p.alpha > 0):
        return f"needs gamma > alpha > 0 (alpha={p.alpha}, gamma={p.gamma})"
    for label, arg, rho in (("x", x, -p.beta1), ("y", y, -p.beta2)):
        if arg == 0:
            continue
        root = Fraction(1) / arg
        if 0 < root < 1 and not (rho.denominator == 1 and rho >= 0):
            return (
                f"factor (1 - {label} t) vanishes inside (0,1) at t = {root} "
                f"with non-polynomial exponent {rho}"
            )
    return None


def eval_f1_integral(p: ParamsF1, x: Fraction, y: Fraction, ctx: PrecCtx) -> EvalResult:
    """Appell F1 via the validated Euler integral (gamma > alpha > 0).

    Valid beyond the bi-disk of series convergence provided the non-integer
    power factors keep a fixed sign on (0,1); x < -1, say, is fine.  The
    endpoint singularities t^(alpha-1) and (1-t)^(gamma-alpha-1) are removed
    exactly by the substitutions t = s^q and t = 1 - s^q with q the exponent
    denominators.
    """
    x, y = Fraction(x), Fraction(y)
    reason = f1_integral_valid(p, x, y)
    if reason is not None:
        raise DomainError(f"Euler integral not applicable: {reason}")
    W = ctx.working_bits + 32

    e0 = p.alpha - 1  # exponent of t at 0; > -1
    e1 = p.gamma - p.alpha - 1  # exponent of (1-t) at 1; > -1
    base = [
        f
        for f in (
            Factor(Fraction(1), -x, 1, -p.beta1),
            Factor(Fraction(1), -y, 1, -p.beta2),
        )
        if f.v != 0 and f.rho != 0
    ]

    # magnitude estimate for the error budget only (floats never enter bounds)
    try:
        mag = math.exp(
            math.lgamma(float(p.alpha))
            + math.lgamma(float(p.gamma - p.alpha))
            - math.lgamma(float(p.gamma))
        )
    except (OverflowError, ValueError):  # pragma: no cover - extreme params
        mag = 1.0
    eps = Fraction(max(mag, 1.0)) / (
        1 << (math.ceil(ctx.target_digits * math.log2(10)) + 16)
    )

    qL = e0.denominator
    qR = e1.denominator
    tL = Fraction(1, 2) ** qL if qL > 1 else Fraction(0)
    tR = 1 - Fraction(1, 2) ** qR if qR > 1 else Fraction(1)
    total = Ball(0, 0, 0, W)

    if qL > 1:
        # left region: t = s^qL, s in [0, 1/2], Jacobian qL * s^(qL-1)
        eL = qL * e0 + qL - 1
        sL = [Factor(Fraction(0), Fraction(1), 1, Fraction(eL))]
        sL.append(Factor(Fraction(1), Fraction(-1), qL, e1))
        sL += [Factor(f.u, f.v, f.q * qL, f.rho) for f in base]
        piece = integrate_factor_product(sL, Fraction(0), Fraction(1, 2), W, eps / 3)
        total = total + piece.mul_fraction(Fraction(qL))

    if qR > 1:
        # right region: t = 1 - s^qR, s in [0, 1/2], Jacobian qR * s^(qR-1)
        eR = qR * e1 + qR - 1
        sR = [Factor(Fraction(0), Fraction(1), 1, Fraction(eR))]
        sR.append(Factor(Fraction(1), Fraction(-1), qR, e0))
        sR += [Factor(f.u + f.v, -f.v, f.q * qR, f.rho) for f in base]
        piece = integrate_factor_product(sR, Fraction(0), Fraction(1, 2), W, eps / 3)
        total = total + piece.mul_fraction(Fraction(qR))

    sM = [
        Factor(Fraction(0), Fraction(1), 1, e0),
        Factor(Fraction(1), Fraction(-1), 1, e1),
        *base,
    ]
    sM = [f for f in sM if f.rho != 0]
    piece = integrate_factor_product(sM, tL, tR, W, eps / 3)
    total = total + piece

    pref = gamma_real(p.gamma, ctx) / (
        gamma_real(p.alpha, ctx) * gamma_real(p.gamma - p.alpha, ctx)
    )
    return EvalResult((pref * total).round_to(ctx.working_bits), 0, "integral")
