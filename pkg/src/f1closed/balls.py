"""Arbitrary-precision real balls: midpoint-radius arithmetic on integers.

A `Ball` encloses a real number as

    value in [ (man - rad) * 2^exp , (man + rad) * 2^exp ]

with `man`, `rad` plain Python integers (rad >= 0).  Every operation returns
an enclosure of the exact image set, so containment is preserved through
arbitrary compositions; precision only controls how much the result is
rounded (rounding always grows the radius).  No floats participate in any
bound.

Elementary functions are self-contained: pi from a Machin-style arctangent
formula, log from the atanh series after dyadic normalization, exp and
cos/sin from Taylor series with explicit tail bounds, rational powers via
exp(q*log x) with exact fast paths for integer and half-integer exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import PoleError  # noqa: F401  (re-exported; Gamma poles use it)


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class PrecisionError(RuntimeError):
    """An enclosure became too wide to be useful at the working precision."""


@dataclass(frozen=True)
class PrecCtx:
    """Explicit precision context: no global precision state anywhere.

    working_bits >= ceil(target_digits * log2(10)) + 32 is enforced so that
    decimal targets always carry guard bits.
    """

    working_bits: int
    target_digits: int

    def __post_init__(self):
        need = math.ceil(self.target_digits * math.log2(10)) + 32
        if self.working_bits < need:
            raise ValueError(
                f"working_bits={self.working_bits} too small for "
                f"{self.target_digits} digits (need >= {need})"
            )

    @classmethod
    def from_digits(cls, digits: int, guard_bits: int = 64) -> "PrecCtx":
        return cls(math.ceil(digits * math.log2(10)) + guard_bits, digits)

    def bump(self, factor: int = 2) -> "PrecCtx":
        return PrecCtx(self.working_bits * factor, self.target_digits)


_ROUND_SLACK = 8


class Ball:
    """Midpoint-radius enclosure of a real number."""

    __slots__ = ("man", "exp", "rad", "prec")

    def __init__(self, man: int, exp: int, rad: int, prec: int):
        self.man = man
        self.exp = exp
        self.rad = rad
        self.prec = prec

    # -- constructors --------------------------------------------------------

    @staticmethod
    def exact_int(n: int, prec: int) -> "Ball":
        return _rounded(n, 0, 0, prec)

    @staticmethod
    def from_fraction(q: Fraction, prec: int) -> "Ball":
        num, den = q.numerator, q.denominator
        if num == 0:
            return Ball(0, 0, 0, prec)
        if den == 1:
            return _rounded(num, 0, 0, prec)
        shift = prec + 4 + max(0, den.bit_length() - abs(num).bit_length())
        man, rem = divmod(num << shift, den)
        rad = 0 if rem == 0 else 1
        if rem:
            # round to nearest
            if 2 * rem >= den:
                man += 1
        return _rounded(man, -shift, rad, prec)

    @staticmethod
    def from_value(v: "int | Fraction | Ball", prec: int) -> "Ball":
        if isinstance(v, Ball):
            return v
        if isinstance(v, int):
            return Ball.exact_int(v, prec)
        return Ball.from_fraction(Fraction(v), prec)

    # -- views ---------------------------------------------------------------

    def lower(self) -> Fraction:
        return Fraction(self.man - self.rad) * Fraction(2) ** self.exp

    def upper(self) -> Fraction:
        return Fraction(self.man + self.rad) * Fraction(2) ** self.exp

    def mid_fraction(self) -> Fraction:
        return Fraction(self.man) * Fraction(2) ** self.exp

    def rad_fraction(self) -> Fraction:
        return Fraction(self.rad) * Fraction(2) ** self.exp

    def contains_zero(self) -> bool:
        return abs(self.man) <= self.rad

    def contains(self, q: Fraction | int) -> bool:
        q = Fraction(q)
        return self.lower() <= q <= self.upper()

    def contains_ball(self, other: "Ball") -> bool:
        return self.lower() <= other.lower() and other.upper() <= self.upper()

    def overlaps(self, other: "Ball") -> bool:
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    def is_positive(self) -> bool:
        return self.man - self.rad > 0

    def is_negative(self) -> bool:
        return self.man + self.rad < 0

    def is_exact(self) -> bool:
        return self.rad == 0

    def mag_upper_log2(self) -> int:
        """Upper bound (crude, in bits) for log2 |value|."""
        m = abs(self.man) + self.rad
        return self.exp + m.bit_length()

    def rad_log2(self) -> int:
        """Upper bound for log2(radius); very negative when exact."""
        if self.rad == 0:
            return self.exp - 8 * self.prec
        return self.exp + self.rad.bit_length()

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> "Ball":
        return Ball(-self.man, self.exp, self.rad, self.prec)

    def __abs__(self) -> "Ball":
        if self.man >= 0:
            return self
        return -self

    def __add__(self, other) -> "Ball":
        other = Ball.from_value(other, self.prec)
        prec = max(self.prec, other.prec)
        if other.man == 0 and other.rad == 0:
            return self
        if self.man == 0 and self.rad == 0:
            return other
        e = min(self.exp, other.exp)
        dx, dy = self.exp - e, other.exp - e
        man = (self.man << dx) + (other.man << dy)
        rad = (self.rad << dx) + (other.rad << dy)
        return _rounded(man, e, rad, prec)

    __radd__ = __add__

    def __sub__(self, other) -> "Ball":
        return self + (-Ball.from_value(other, self.prec))

    def __rsub__(self, other) -> "Ball":
        return (-self) + Ball.from_value(other, self.prec)

    def __mul__(self, other) -> "Ball":
        other = Ball.from_value(other, self.prec)
        prec = max(self.prec, other.prec)
        am, ar = self.man, self.rad
        bm, br = other.man, other.rad
        man = am * bm
        rad = abs(am) * br + abs(bm) * ar + ar * br
        return _rounded(man, self.exp + other.exp, rad, prec)

    __rmul__ = __mul__

    def mul_fraction(self, q: Fraction) -> "Ball":
        """Scale by an exact rational (tight: one directed rounding)."""
        num, den = q.numerator, q.denominator
        if num == 0:
            return Ball(0, 0, 0, self.prec)
        man = self.man * num
        rad = self.rad * abs(num)
        if den == 1:
            return _rounded(man, self.exp, rad, self.prec)
        shift = self.prec + 4 + den.bit_length()
        man, rem = divmod(man << shift, den)
        rad = ((rad << shift) // den) + 2
        if 2 * rem >= den:
            man += 1
        return _rounded(man, self.exp - shift, rad, self.prec)

    def __truediv__(self, other) -> "Ball":
        other = Ball.from_value(other, self.prec)
        return self * inv(other)

    def __rtruediv__(self, other) -> "Ball":
        return Ball.from_value(other, self.prec) * inv(self)

    def __pow__(self, k: int) -> "Ball":
        if not isinstance(k, int):
            raise TypeError("Ball ** requires an integer exponent")
        if k < 0:
            return inv(self**(-k))
        if k > 1 and (self.is_positive() or self.is_negative()):
            # monotone on a sign-definite ball: exact dyadic endpoints stay
            # sign-definite (plain ball products can spuriously reach zero)
            lo, hi = self.lower() ** k, self.upper() ** k
            if lo > hi:
                lo, hi = hi, lo
            return from_endpoints(lo, hi, self.prec)
        result = Ball.exact_int(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def widen(self, extra_rad: Fraction) -> "Ball":
        """Add a nonnegative exact amount to the radius."""
        if extra_rad < 0:
            raise ValueError("radius increment must be nonnegative")
        if extra_rad == 0:
            return self
        num, den = extra_rad.numerator, extra_rad.denominator
        # ceil(extra / 2^exp)
        scaled = -((-num << max(0, -self.exp)) // (den << max(0, self.exp)))
        return _rounded(self.man, self.exp, self.rad + scaled + 1, self.prec)

    def round_to(self, prec: int) -> "Ball":
        return _rounded(self.man, self.exp, self.rad, prec)

    def __repr__(self) -> str:
        return f"Ball({fmt(self, min(self.prec // 4, 30))})"


def _rounded(man: int, exp: int, rad: int, prec: int) -> Ball:
    """Round a raw (man, exp, rad) triple to roughly `prec` mantissa bits."""
    size = max(abs(man).bit_length(), rad.bit_length())
    s = size - prec - _ROUND_SLACK
    if s > 0:
        man >>= s
        rad = (rad >> s) + 2
        exp += s
    if man == 0 and rad == 0:
        return Ball(0, 0, 0, prec)
    return Ball(man, exp, rad, prec)


def inv(x: Ball, prec: int | None = None) -> Ball:
    """Reciprocal; requires the ball to exclude zero."""
    prec = prec or x.prec
    if x.contains_zero():
        raise ZeroDivisionError("division by a ball containing zero")
    sign = 1
    man, rad = x.man, x.rad
    if man < 0:
        sign = -1
        man = -man
    lo, hi = man - rad, man + rad
    S = hi.bit_length() + prec + 4
    L = (1 << S) // hi
    U = -((-1 << S) // lo)  # ceil
    m = (L + U + 1) >> 1
    r = ((U - L) >> 1) + 2
    return _rounded(sign * m, -x.exp - S, r, prec)


def sqrt(x: Ball, prec: int | None = None) -> Ball:
    """Square root; the ball must be nonnegative."""
    prec = prec or x.prec
    lo, hi = x.man - x.rad, x.man + x.rad
    if lo < 0:
        raise DomainError("sqrt of a ball reaching below zero")
    e = x.exp
    if e & 1:
        lo <<= 1
        hi <<= 1
        e -= 1
    S = 2 * (prec + 4)
    L = math.isqrt(lo << S)
    U = math.isqrt(hi << S) + 1
    m = (L + U + 1) >> 1
    r = ((U - L) >> 1) + 2
    return _rounded(m, (e - S) // 2, r, prec)


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

_pi_cache: dict[int, Ball] = {}
_ln2_cache: dict[int, Ball] = {}


def _atan_inv_fixed(q: int, W: int) -> tuple[int, int]:
    """(value*2^W, error_ulps) for arctan(1/q) by the alternating series."""
    total = 0
    err = 0
    k = 0
    q2 = q * q
    qpow = q  # q^(2k+1)
    while True:
        term = (1 << W) // ((2 * k + 1) * qpow)
        if term == 0:
            err += 1  # bound for the entire remaining tail (alternating)
            break
        total += -term if (k & 1) else term
        err += 1
        qpow *= q2
        k += 1
    return total, err + 1


def pi(prec: int) -> Ball:
    """pi via Machin's formula 16*atan(1/5) - 4*atan(1/239)."""
    b = _pi_cache.get(prec)
    if b is None:
        W = prec + 32
        a5, e5 = _atan_inv_fixed(5, W)
        a239, e239 = _atan_inv_fixed(239, W)
        man = 16 * a5 - 4 * a239
        rad = 16 * e5 + 4 * e239
        b = _rounded(man, -W, rad, prec)
        _pi_cache[prec] = b
    return b


def ln2(prec: int) -> Ball:
    """log 2 = 2*atanh(1/3), a positive series with geometric tail 1/9."""
    b = _ln2_cache.get(prec)
    if b is None:
        W = prec + 32
        total = 0
        err = 0
        k = 0
        ppow = 3  # 3^(2k+1)
        while True:
            term = (1 << W) // ((2 * k + 1) * ppow)
            if term == 0:
                # tail < term_bound * (1/9)/(1-1/9) < 1 ulp here
                err += 1
                break
            total += term
            err += 1
            ppow *= 9
            k += 1
        b = _rounded(2 * total, -W, 2 * err + 2, prec)
        _ln2_cache[prec] = b
    return b


# ---------------------------------------------------------------------------
# elementary functions
# ---------------------------------------------------------------------------


def exp(x: Ball, prec: int | None = None) -> Ball:
    """Exponential: reduce by ln2, Taylor on the remainder, exact 2^k shift.

    The midpoint is handled by the series; a nonzero input radius r becomes
    the multiplicative enclosure [1-r, 1+3r] (valid for r <= 1).
    """
    prec = prec or x.prec
    W = prec + 32
    in_rad = x.rad_fraction()
    if in_rad > 1:
        # wide ball: exp is monotone, evaluate at the exact endpoints
        lo = exp(Ball.from_fraction(x.lower(), W), W)
        hi = exp(Ball.from_fraction(x.upper(), W), W)
        return from_endpoints(lo.lower(), hi.upper(), prec)
    core = Ball(x.man, x.exp, 0, W)
    xf = _to_float(core)
    if abs(xf) > 1e15:
        raise DomainError("exp argument out of supported range")
    k = round(xf / math.log(2))
    r = core - ln2(W).mul_fraction(Fraction(k)) if k else core
    term = Ball.exact_int(1, W)
    total = term
    j = 0
    while True:
        j += 1
        term = term * r
        term = term.mul_fraction(Fraction(1, j))
        total = total + term
        if term.man == 0 and term.rad == 0:
            break  # series terminated exactly; no tail
        tmag = (abs(term.man) + term.rad).bit_length() + term.exp
        if tmag < -W - 8 and j >= 4:
            # tail: |r| <= 0.36, j >= 4 => ratio < 0.08, tail < |term|/2
            tail = ((abs(term.man) + term.rad) << 2) + 4
            total = _rounded(
                total.man,
                total.exp,
                total.rad + _align_rad(tail, term.exp, total.exp),
                W,
            )
            break
        if j > 4 * W:  # pragma: no cover - defensive
            raise PrecisionError("exp series failed to converge")
    out = Ball(total.man, total.exp + k, total.rad, W)
    if in_rad:
        out = out * from_endpoints(1 - in_rad, 1 + 3 * in_rad, W)
    return _rounded(out.man, out.exp, out.rad, prec)


def _align_rad(rad: int, from_exp: int, to_exp: int) -> int:
    """Convert a radius in units 2^from_exp to (ceil) units of 2^to_exp."""
    d = from_exp - to_exp
    if d >= 0:
        return rad << d
    return (rad >> (-d)) + 1


def _to_float(x: Ball) -> float:
    m = x.man
    e = x.exp
    size = abs(m).bit_length()
    if size > 900:
        m >>= size - 900
        e += size - 900
    try:
        return math.ldexp(float(m), e)
    except OverflowError:
        return math.inf if m > 0 else -math.inf


def log(x: Ball, prec: int | None = None) -> Ball:
    """Natural log of a strictly positive ball."""
    prec = prec or x.prec
    if not x.is_positive():
        raise DomainError("log of a ball reaching below or touching zero")
    W = prec + 32
    if 4 * x.rad > abs(x.man):
        # wide ball: log is monotone, evaluate at the exact endpoints
        lo = log(Ball.from_fraction(x.lower(), W), W)
        hi = log(Ball.from_fraction(x.upper(), W), W)
        return from_endpoints(lo.lower(), hi.upper(), prec)
    # normalize x = 2^j * u with u in roughly [1, 2)
    j = x.exp + x.man.bit_length() - 1
    u = Ball(x.man, x.exp - j, x.rad, W)  # u in about [0.5, 2)
    # t = (u-1)/(u+1), |t| < 1/2 comfortably
    t = (u - 1) / (u + 1)
    t2 = t * t
    term = t
    total = t
    k = 0
    while True:
        k += 1
        term = term * t2
        total = total + term.mul_fraction(Fraction(1, 2 * k + 1))
        if term.man == 0 and term.rad == 0:
            break  # series terminated exactly; no tail
        tmag = (abs(term.man) + term.rad).bit_length() + term.exp
        if tmag < -W - 8:
            # geometric tail, ratio |t|^2 <= 1/4: last term / (1 - 1/4)
            tail = ((abs(term.man) + term.rad) << 1) + 4
            total = _rounded(
                total.man,
                total.exp,
                total.rad + _align_rad(tail, term.exp, total.exp),
                W,
            )
            break
        if k > 4 * W:  # pragma: no cover - defensive
            raise PrecisionError("log series failed to converge")
    lnu = total + total  # 2*atanh(t)
    out = lnu + ln2(W).mul_fraction(Fraction(j)) if j else lnu
    return _rounded(out.man, out.exp, out.rad, prec)


def _cos_or_sin_reduced(y: Ball, W: int, want_cos: bool) -> Ball:
    """Taylor series for cos/sin on |y| <= about 3.3, in ball arithmetic."""
    y2 = y * y
    if want_cos:
        term = Ball.exact_int(1, W)
        total = term
        denom_base = 0
    else:
        term = y
        total = term
        denom_base = 1
    j = 0
    while True:
        j += 1
        d = denom_base + 2 * j
        term = term * y2
        term = term.mul_fraction(Fraction(-1, (d - 1) * d))
        total = total + term
        if term.man == 0 and term.rad == 0:
            return total  # series terminated exactly; no tail
        tmag = (abs(term.man) + term.rad).bit_length() + term.exp
        if tmag < -W - 8 and (2 * j) ** 2 > 16:
            tail = ((abs(term.man) + term.rad) << 1) + 4
            return _rounded(
                total.man,
                total.exp,
                total.rad + _align_rad(tail, term.exp, total.exp),
                W,
            )
        if j > 4 * W:  # pragma: no cover - defensive
            raise PrecisionError("cos/sin series failed to converge")


def cos(x: Ball, prec: int | None = None) -> Ball:
    prec = prec or x.prec
    W = prec + 32
    two_pi = pi(W) + pi(W)
    k = round(_to_float(x) / (2 * math.pi))
    y = x - two_pi.mul_fraction(Fraction(k)) if k else x
    if y.upper() > 4 or y.lower() < -4:  # hopelessly wide: trivial enclosure
        return from_endpoints(Fraction(-1), Fraction(1), prec)
    out = _cos_or_sin_reduced(Ball(y.man, y.exp, y.rad, W), W, want_cos=True)
    out = _clamp_unit(out)
    return _rounded(out.man, out.exp, out.rad, prec)


def sin(x: Ball, prec: int | None = None) -> Ball:
    prec = prec or x.prec
    W = prec + 32
    two_pi = pi(W) + pi(W)
    k = round(_to_float(x) / (2 * math.pi))
    y = x - two_pi.mul_fraction(Fraction(k)) if k else x
    if y.upper() > 4 or y.lower() < -4:
        return from_endpoints(Fraction(-1), Fraction(1), prec)
    out = _cos_or_sin_reduced(Ball(y.man, y.exp, y.rad, W), W, want_cos=False)
    out = _clamp_unit(out)
    return _rounded(out.man, out.exp, out.rad, prec)


def _clamp_unit(b: Ball) -> Ball:
    """Intersect an enclosure with [-1, 1] (valid for sin/cos outputs)."""
    lo, hi = b.lower(), b.upper()
    lo = max(lo, Fraction(-1))
    hi = min(hi, Fraction(1))
    return from_endpoints(lo, hi, b.prec)


def cos_pi_fraction(q: Fraction, prec: int) -> Ball:
    """cos(pi*q) with the angle reduced exactly in rational arithmetic."""
    q = q % 2  # now in [0, 2)
    sign = 1
    if q > 1:
        q = 2 - q
    if q > Fraction(1, 2):
        q = 1 - q
        sign = -1
    if q == Fraction(1, 2):
        return Ball(0, 0, 0, prec)
    W = prec + 32
    y = pi(W).mul_fraction(q)
    out = _cos_or_sin_reduced(y, W, want_cos=True)
    if sign < 0:
        out = -out
    return _rounded(out.man, out.exp, out.rad, prec)


def sin_pi_fraction(q: Fraction, prec: int) -> Ball:
    """sin(pi*q), reduced exactly: sin(pi q) = cos(pi(q - 1/2))."""
    return cos_pi_fraction(q - Fraction(1, 2), prec)


def pow_rat(x: Ball, e: Fraction, prec: int | None = None) -> Ball:
    """x^e for rational e; x must be positive unless e is an integer."""
    prec = prec or x.prec
    e = Fraction(e)
    if e.denominator == 1:
        return x ** int(e)
    if not x.is_positive():
        raise DomainError("rational power of a non-positive ball")
    den = e.denominator
    if den & (den - 1) == 0:  # power of two: sqrt chain is tighter
        b = x ** abs(e.numerator)
        d = den
        while d > 1:
            b = sqrt(b, prec + 16)
            d >>= 1
        return _rounded(b.man, b.exp, b.rad, prec) if e >= 0 else inv(b, prec)
    out = exp(log(x, prec + 32).mul_fraction(e), prec)
    return out


def root(x: Ball, n: int, prec: int | None = None) -> Ball:
    """Principal n-th root of a positive ball."""
    return pow_rat(x, Fraction(1, n), prec)


def from_endpoints(lo: Fraction, hi: Fraction, prec: int) -> Ball:
    """Smallest ball (up to rounding) containing [lo, hi]."""
    if lo > hi:
        raise ValueError("lo > hi")
    mid = (lo + hi) / 2
    rad = (hi - lo) / 2
    b = Ball.from_fraction(mid, prec + 8)
    extra = rad + abs(mid - b.mid_fraction())
    return b.widen(extra).round_to(prec)


# ---------------------------------------------------------------------------
# decimal rendering
# ---------------------------------------------------------------------------


def fmt(b: Ball, digits: int) -> str:
    """Decimal string with explicit radius, e.g. '1.8000e0 +/- 3e-51'."""
    if b.man == 0 and b.rad == 0:
        return "0 +/- 0"
    mid_str = _decimal_mid(b, digits)
    rad_str = _decimal_rad(b)
    return f"{mid_str} +/- {rad_str}"


def _decimal_mid(b: Ball, digits: int) -> str:
    man, exp = b.man, b.exp
    if man == 0:
        return "0"
    neg = man < 0
    man = abs(man)
    bits = man.bit_length() + exp
    d10 = math.floor(bits * 0.30102999566398114)

    def scaled(d: int) -> int:
        # round-to-nearest of man * 2^exp * 10^(digits-1-d)
        s = digits - 1 - d
        num, den = man, 1
        if exp >= 0:
            num <<= exp
        else:
            den <<= -exp
        if s >= 0:
            num *= 10**s
        else:
            den *= 10 ** (-s)
        return (2 * num + den) // (2 * den)

    q = scaled(d10)
    while q >= 10**digits:
        d10 += 1
        q = scaled(d10)
    while 0 < q < 10 ** (digits - 1):
        d10 -= 1
        q = scaled(d10)
    text = str(q)
    mantissa = text[0] + "." + text[1:] if len(text) > 1 else text
    sign = "-" if neg else ""
    return f"{sign}{mantissa}e{d10}"


def _decimal_rad(b: Ball) -> str:
    if b.rad == 0:
        return "0"
    # one significant decimal digit, rounded up
    bits = b.rad.bit_length() + b.exp
    e10 = math.floor(bits * 0.30102999566398114)
    num = b.rad
    den = 1
    if b.exp >= 0:
        num <<= b.exp
    else:
        den <<= -b.exp
    scale = 10**e10
    if e10 >= 0:
        den *= scale
    else:
        num *= 10 ** (-e10)
    lead = -((-num) // den)  # ceil
    while lead >= 10:
        lead = -((-lead) // 10)
        e10 += 1
    return f"{lead}e{e10}"
