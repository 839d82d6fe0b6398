"""Laplace-limit machinery for the terminating closed-form family.

The family with constant ratio 81/625 specializes at a = 1/4 + n to the
identity

    2F1(1/4,1/2;3/4;80/81) = (5/3)^(4n) * F1(1/4+n; 1/2+2n, -4n; 3/4+n;
                                              80/81, 16/15),

so every member of the sequence term(n) on the right is exactly the same
number.  Writing the right-hand side through the Euler integral splits it
as A * B with

    A = (5/3)^(4n) * Gamma(3/4+n) / (Gamma(1/4+n) Gamma(1/2)),
    B = int_0^1 g(t) e^{n h(t)} dt,
    g = t^(-3/4) (1-t)^(-1/2) (1-80t/81)^(-1/2),
    h = log( t (1-80t/81)^(-2) (1-16t/15)^4 ),

and the saddle-point behavior B ~ (9/5)(81/625)^n sqrt(pi/n),
A ~ (625/81)^n sqrt(n/pi) recovers the limit 9/5.  This module computes the
phase critical points with certified enclosures, the sequence terms, both
asymptotic-form ratios, and a (non-rigorous) Richardson extrapolation.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import balls
from .balls import Ball, DomainError, PrecCtx
from .gammafn import gamma_real
from .hyper import ParamsF1, eval_f1_terminating
from .quadrature import Factor, integrate_factor_product


@dataclass(frozen=True)
class PhaseFn:
    """h(t) = log( t^p0 * prod (1 - u_i t)^{p_i} ) on (0, 1)."""

    p0: Fraction
    factors: tuple[tuple[Fraction, Fraction], ...]  # (u_i, p_i)

    def product_at(self, t: Ball, W: int) -> Ball:
        out = balls.pow_rat(t, self.p0, W) if self.p0 != 1 else t
        for u, p in self.factors:
            base = Ball.exact_int(1, W) - t.mul_fraction(u)
            if p.denominator == 1:
                out = out * base ** int(p)
            else:
                out = out * balls.pow_rat(base, p, W)
        return out

    def h_at(self, t: Ball | Fraction, ctx: PrecCtx) -> Ball:
        W = ctx.working_bits
        tb = Ball.from_value(t, W) if not isinstance(t, Ball) else t
        return balls.log(self.product_at(tb, W), W)

    def h_prime_numerator(self) -> list[Fraction]:
        """Coefficients of the numerator polynomial of h'(t).

        h'(t) = p0/t + sum p_i (-u_i)/(1 - u_i t); the common denominator is
        t * prod(1 - u_i t).
        """
        def mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return out

        total = [Fraction(0)]
        pieces = [("t", self.p0)] + [(u, p) for u, p in self.factors]
        for idx, (tag, p) in enumerate(pieces):
            if tag == "t":
                term = [p]
            else:
                term = [-tag * p]
            for jdx, (tag2, _p2) in enumerate(pieces):
                if jdx == idx:
                    continue
                term = mul(term, [Fraction(0), Fraction(1)] if tag2 == "t" else [Fraction(1), -tag2])
            if len(term) > len(total):
                total += [Fraction(0)] * (len(term) - len(total))
            for i, v in enumerate(term):
                total[i] += v
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        return total


EXAMPLE_PHASE = PhaseFn(
    Fraction(1),
    ((Fraction(80, 81), Fraction(-2)), (Fraction(16, 15), Fraction(4))),
)


def _poly_eval(coeffs: list[Fraction], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_eval_ball(coeffs: list[Fraction], t: Ball, W: int) -> Ball:
    acc = Ball(0, 0, 0, W)
    for c in reversed(coeffs):
        acc = acc * t + Ball.from_fraction(c, W)
    return acc


def critical_points(ph: PhaseFn, ctx: PrecCtx) -> list[tuple[Ball, Ball]]:
    """Certified enclosures of the roots of h' in (0,1), with h-values.

    Roots are isolated by exact sign-change bisection on the numerator
    polynomial of h' and refined by interval Newton steps in ball
    arithmetic.  Roots at factor zeros are rejected.
    """
    num = ph.h_prime_numerator()
    dnum = [c * (i + 1) for i, c in enumerate(num[1:])]
    forbidden = [Fraction(1) / u for u, p in ph.factors if u > 0]

    # exact bisection pass: find sign changes on a refining grid
    intervals: list[tuple[Fraction, Fraction]] = []
    grid = 64
    pts = [Fraction(i, grid) for i in range(grid + 1)]
    vals = [_poly_eval(num, t) for t in pts]
    for i in range(grid):
        lo, hi = pts[i], pts[i + 1]
        if lo == 0 or hi == 1:
            # endpoints of (0,1) are excluded; shrink inward slightly
            lo = lo if lo != 0 else Fraction(1, 4 * grid)
            hi = hi if hi != 1 else 1 - Fraction(1, 4 * grid)
        vlo = _poly_eval(num, lo)
        vhi = _poly_eval(num, hi)
        if vlo == 0:
            intervals.append((lo, lo))
            continue
        if vlo * vhi < 0:
            intervals.append((lo, hi))
    out = []
    W = ctx.working_bits
    for lo, hi in intervals:
        if any(lo <= f <= hi for f in forbidden):
            raise DomainError("critical point coincides with a factor zero")
        # bisect to a reasonable width, then interval Newton to full width
        vlo = _poly_eval(num, lo)
        for _ in range(48):
            mid = (lo + hi) / 2
            vmid = _poly_eval(num, mid)
            if vmid == 0:
                lo = hi = mid
                break
            if vlo * vmid < 0:
                hi = mid
            else:
                lo, vlo = mid, vmid
        root = balls.from_endpoints(lo, hi, W)
        for _ in range(64):
            if root.rad == 0 or root.rad_log2() < -W + 16:
                break
            mid = Ball.from_fraction(root.mid_fraction(), W)
            fmid = _poly_eval_ball(num, mid, W)
            fprime = _poly_eval_ball(dnum, root, W)
            if fprime.contains_zero():
                break
            candidate = mid - fmid / fprime
            # Newton enclosure must stay inside; intersect for safety
            nlo = max(candidate.lower(), root.lower())
            nhi = min(candidate.upper(), root.upper())
            if nlo > nhi:
                break
            root = balls.from_endpoints(nlo, nhi, W)
        out.append((root, ph.h_at(root, ctx)))
    return out


@dataclass(frozen=True)
class LimitSequence:
    ns: tuple[int, ...]
    terms: tuple[Ball, ...]


def a_factor(n: int, ctx: PrecCtx) -> Ball:
    """A = (5/3)^(4n) * Gamma(3/4+n) / (Gamma(1/4+n) Gamma(1/2))."""
    num = gamma_real(Fraction(3, 4) + n, ctx)
    den = gamma_real(Fraction(1, 4) + n, ctx) * gamma_real(Fraction(1, 2), ctx)
    return (num / den).mul_fraction(Fraction(5**(4 * n), 3**(4 * n)))


def sequence_term(n: int, ctx: PrecCtx) -> Ball:
    """term(n) = (5/3)^(4n) * F1(1/4+n; 1/2+2n, -4n; 3/4+n; 80/81, 16/15).

    Every term equals 2F1(1/4,1/2;3/4;80/81) = 9/5 exactly; computing it
    honestly requires absorbing about 5n decimal digits of cancellation,
    which the evaluator handles by raising its working precision.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = ParamsF1(
        Fraction(1, 4) + n, Fraction(1, 2) + 2 * n, Fraction(-4 * n), Fraction(3, 4) + n
    )
    res = eval_f1_terminating(
        p, Fraction(80, 81), Fraction(16, 15), ctx, extra_bits=20 * n + 64
    )
    return res.value.mul_fraction(Fraction(5**(4 * n), 3**(4 * n)))


def laplace_sequence(n_list: list[int], ctx: PrecCtx, n_max: int = 200) -> LimitSequence:
    for n in n_list:
        if n > n_max:
            raise ValueError(f"n = {n} exceeds the configured maximum {n_max}")
    return LimitSequence(tuple(n_list), tuple(sequence_term(n, ctx) for n in n_list))


def b_factor(n: int, ctx: PrecCtx) -> Ball:
    """B = term(n) / A; the integral of g e^{n h} over (0,1)."""
    return sequence_term(n, ctx) / a_factor(n, ctx)


def b_factor_quadrature(n: int, ctx: PrecCtx) -> Ball:
    """B computed directly by validated quadrature (cross-check route).

    The integrand t^(n-3/4) (1-t)^(-1/2) (1-80t/81)^(-2n-1/2) (1-16t/15)^(4n)
    is a plain factor product; the polynomial factor changes sign at
    t = 15/16, which the integrator handles through its exact polynomial
    part.
    """
    W = ctx.working_bits + 32
    e0 = Fraction(4 * n - 3, 4)  # t exponent
    factors_mid = [
        Factor(Fraction(0), Fraction(1), 1, e0),
        Factor(Fraction(1), Fraction(-1), 1, Fraction(-1, 2)),
        Factor(Fraction(1), Fraction(-80, 81), 1, Fraction(-4 * n - 1, 2)),
        Factor(Fraction(1), Fraction(-16, 15), 1, Fraction(4 * n)),
    ]
    # budget: |B| <= 2 * (81/625)^n
    eps = Fraction(2 * 81**n, 625**n) / (
        1 << (math.ceil(ctx.target_digits * math.log2(10)) + 16)
    )
    total = Ball(0, 0, 0, W)
    # left region t = s^4 removes t^(-3/4); right region t = 1-s^2
    q = 4
    eL = q * e0 + q - 1
    sL = [Factor(Fraction(0), Fraction(1), 1, Fraction(eL))]
    for f in factors_mid[1:]:
        sL.append(Factor(f.u, f.v, q, f.rho))
    total = total + integrate_factor_product(
        sL, Fraction(0), Fraction(1, 2), W, eps / 3
    ).mul_fraction(Fraction(q))
    qr = 2
    eR = qr * Fraction(-1, 2) + qr - 1
    sR = [Factor(Fraction(0), Fraction(1), 1, Fraction(eR))]
    sR.append(Factor(Fraction(1), Fraction(-1), qr, e0))
    for f in factors_mid[2:]:
        sR.append(Factor(f.u + f.v, -f.v, qr, f.rho))
    total = total + integrate_factor_product(
        sR, Fraction(0), Fraction(1, 2), W, eps / 3
    ).mul_fraction(Fraction(qr))
    total = total + integrate_factor_product(
        factors_mid, Fraction(1, 16), Fraction(3, 4), W, eps / 3
    )
    return total.round_to(ctx.working_bits)


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    term: Ball
    a_ratio: Ball
    b_ratio: Ball


def asymptotic_forms_check(n_list: list[int], ctx: PrecCtx) -> list[AsymptoticRow]:
    """Ratios of A and B against their saddle-point forms; both tend to 1.

    a_ratio = A / [ (625/81)^n sqrt(n/pi) ],
    b_ratio = B / [ (9/5) (81/625)^n sqrt(pi/n) ].
    """
    out = []
    W = ctx.working_bits
    for n in n_list:
        if n < 4:
            raise ValueError("asymptotic check needs n >= 4")
        term = sequence_term(n, ctx)
        A = a_factor(n, ctx)
        B = term / A
        sqrt_n_over_pi = balls.sqrt(Ball.exact_int(n, W) / balls.pi(W), W)
        a_ratio = (A / sqrt_n_over_pi).mul_fraction(Fraction(81**n, 625**n))
        b_model = balls.inv(sqrt_n_over_pi, W).mul_fraction(
            Fraction(9 * 81**n, 5 * 625**n)
        )
        b_ratio = B / b_model
        out.append(AsymptoticRow(n, term, a_ratio, b_ratio))
    return out


def richardson_extrapolate(seq: LimitSequence, model: str = "inverse_n") -> Ball:
    """Polynomial extrapolation in 1/n to the limit.

    The returned radius is a heuristic error estimate (last Neville
    correction plus the propagated input radii), not a certified bound.
    """
    if model != "inverse_n":
        raise ValueError(f"unknown extrapolation model {model!r}")
    if len(seq.ns) < 3:
        raise ValueError("need at least 3 terms to extrapolate")
    hs = [Fraction(1, max(n, 1)) for n in seq.ns]
    vals = [t.mid_fraction() for t in seq.terms]
    m = len(vals)
    table = [vals[:]]
    for k in range(1, m):
        row = []
        for i in range(m - k):
            num = hs[i] * table[k - 1][i + 1] - hs[i + k] * table[k - 1][i]
            row.append(num / (hs[i] - hs[i + k]))
        table.append(row)
    best = table[-1][0]
    prev = table[-2][0] if m >= 2 else best
    heuristic = abs(best - prev) + max(t.rad_fraction() for t in seq.terms)
    prec = seq.terms[0].prec
    return Ball.from_fraction(best, prec).widen(heuristic)


def emit_phase_csv(ph: PhaseFn, path: str | Path, ctx: PrecCtx, samples: int = 200) -> None:
    """Sample h(t) on a uniform grid (skipping factor zeros) to CSV."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "h"])
        for i in range(1, samples):
            t = Fraction(i, samples)
            if any(u * t == 1 for u, _ in ph.factors):
                continue
            val = ph.h_at(t, ctx)
            writer.writerow([float(t), float(val.mid_fraction())])


def emit_sequence_csv(
    rows: list[AsymptoticRow], path: str | Path
) -> None:
    """Columns: n, term midpoint, a_ratio midpoint, b_ratio midpoint."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "term", "a_ratio", "b_ratio"])
        for r in rows:
            writer.writerow(
                [
                    r.n,
                    float(r.term.mid_fraction()),
                    float(r.a_ratio.mid_fraction()),
                    float(r.b_ratio.mid_fraction()),
                ]
            )
