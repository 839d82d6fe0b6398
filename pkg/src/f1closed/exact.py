"""Exact multivariate rational-function arithmetic over the rationals.

The variable set is fixed once and for all:

    (a, b1, b2, c, x, y, n)

A polynomial is a dict mapping exponent tuples (one nonnegative int per
variable) to nonzero Fraction coefficients; the zero polynomial is the empty
dict.  ``RatF`` is a reduced fraction of two such polynomials.  Everything is
exact: no floats anywhere.

Normal form conventions (needed for unique printing and golden tests):

* monomial order: graded lexicographic with the fixed variable order above;
* gcd(num, den) = 1, computed by content/primitive-part recursion with a
  primitive polynomial remainder sequence at the univariate base;
* the denominator has integer coefficients with content 1 and a positive
  leading coefficient under the monomial order.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Iterable, Mapping

VARS: tuple[str, ...] = ("a", "b1", "b2", "c", "x", "y", "n")
NVARS = len(VARS)
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}

Exponent = tuple[int, ...]
Terms = dict[Exponent, Fraction]

_ZERO_EXP: Exponent = (0,) * NVARS

Rat = Fraction  # exact rationals; Fraction already enforces gcd=1, den >= 1


def _grlex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


class Poly:
    """Sparse polynomial in the fixed variables with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, Fraction] | None = None):
        self.terms: Terms = {e: q for e, q in (terms or {}).items() if q != 0}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(value: int | Fraction) -> "Poly":
        q = Fraction(value)
        return Poly({_ZERO_EXP: q} if q else {})

    @staticmethod
    def var(name: str) -> "Poly":
        e = [0] * NVARS
        e[_VAR_INDEX[name]] = 1
        return Poly({tuple(e): Fraction(1)})

    @staticmethod
    def affine(name: str, slope: Fraction, intercept: Fraction) -> "Poly":
        """slope*name + intercept."""
        out: Terms = {}
        if slope:
            e = [0] * NVARS
            e[_VAR_INDEX[name]] = 1
            out[tuple(e)] = Fraction(slope)
        if intercept:
            out[_ZERO_EXP] = Fraction(intercept)
        return Poly(out)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, var: str) -> int:
        i = _VAR_INDEX[var]
        return max((e[i] for e in self.terms), default=0)

    def variables(self) -> set[str]:
        used: set[str] = set()
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    used.add(VARS[i])
        return used

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, q in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = q
            else:
                s = s + q
                if s:
                    out[e] = s
                else:
                    del out[e]
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    def __neg__(self) -> "Poly":
        p = Poly.__new__(Poly)
        p.terms = {e: -q for e, q in self.terms.items()}
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.terms or not other.terms:
            return Poly()
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Terms = {}
        for eb, qb in b.items():
            for ea, qa in a.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                q = qa * qb
                s = out.get(e)
                if s is None:
                    out[e] = q
                else:
                    s = s + q
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    def scale(self, q: Fraction) -> "Poly":
        if not q:
            return Poly()
        p = Poly.__new__(Poly)
        p.terms = {e: c * q for e, c in self.terms.items()}
        return p

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- evaluation and substitution ----------------------------------------

    def eval(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for e, q in self.terms.items():
            term = q
            for i, p in enumerate(e):
                if p:
                    term *= Fraction(point[VARS[i]]) ** p
            total += term
        return total

    def subst(self, assignment: Mapping[str, "Poly"]) -> "Poly":
        """Simultaneously substitute polynomials for variables."""
        idx = {_VAR_INDEX[name]: poly for name, poly in assignment.items()}
        out = Poly()
        pow_cache: dict[tuple[int, int], Poly] = {}
        for e, q in self.terms.items():
            residual = [p if i not in idx else 0 for i, p in enumerate(e)]
            term = Poly({tuple(residual): q})
            for i, p in enumerate(e):
                if p and i in idx:
                    key = (i, p)
                    powed = pow_cache.get(key)
                    if powed is None:
                        powed = idx[i] ** p
                        pow_cache[key] = powed
                    term = term * powed
            out = out + term
        return out

    def diff(self, var: str) -> "Poly":
        i = _VAR_INDEX[var]
        out: Terms = {}
        for e, q in self.terms.items():
            p = e[i]
            if p:
                e2 = e[:i] + (p - 1,) + e[i + 1 :]
                s = out.get(e2, Fraction(0)) + q * p
                if s:
                    out[e2] = s
                elif e2 in out:
                    del out[e2]
        return Poly(out)

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            q = self.terms[e]
            mono = "*".join(
                VARS[i] if p == 1 else f"{VARS[i]}^{p}"
                for i, p in enumerate(e)
                if p
            )
            if not mono:
                body = str(abs(q))
            elif abs(q) == 1:
                body = mono
            else:
                body = f"{abs(q)}*{mono}"
            if not parts:
                parts.append(body if q > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if q > 0 else f"-{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


# ---------------------------------------------------------------------------
# integer-primitive helpers and gcd
# ---------------------------------------------------------------------------


def _int_content_and_primitive(p: Poly) -> tuple[Fraction, dict[Exponent, int]]:
    """Write p = content * primitive with integer coprime coefficients.

    The content is positive; the primitive part keeps the sign of p.
    """
    if not p.terms:
        return Fraction(0), {}
    den_lcm = 1
    for q in p.terms.values():
        den_lcm = den_lcm * q.denominator // math.gcd(den_lcm, q.denominator)
    ints = {e: int(q * den_lcm) for e, q in p.terms.items()}
    g = 0
    for v in ints.values():
        g = math.gcd(g, v)
    return Fraction(g, den_lcm), {e: v // g for e, v in ints.items()}


def _main_var(terms: Iterable[Exponent]) -> int | None:
    for i in range(NVARS):
        for e in terms:
            if e[i]:
                return i
    return None


def _as_univariate(terms: dict[Exponent, int], var: int) -> dict[int, dict[Exponent, int]]:
    """View integer terms as a univariate poly in `var` with poly coefficients."""
    out: dict[int, dict[Exponent, int]] = {}
    for e, q in terms.items():
        d = e[var]
        e2 = e[:var] + (0,) + e[var + 1 :]
        out.setdefault(d, {})[e2] = q
    return out


def _iadd(acc: dict[Exponent, int], other: dict[Exponent, int], sign: int = 1) -> None:
    for e, q in other.items():
        s = acc.get(e, 0) + sign * q
        if s:
            acc[e] = s
        elif e in acc:
            del acc[e]


def _imul(a: dict[Exponent, int], b: dict[Exponent, int]) -> dict[Exponent, int]:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out: dict[Exponent, int] = {}
    for eb, qb in b.items():
        for ea, qa in a.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            s = out.get(e, 0) + qa * qb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _imul_int(a: dict[Exponent, int], k: int) -> dict[Exponent, int]:
    if not k:
        return {}
    return {e: q * k for e, q in a.items()}


def _ishift(a: dict[Exponent, int], var: int, by: int) -> dict[Exponent, int]:
    if not by:
        return dict(a)
    out: dict[Exponent, int] = {}
    for e, q in a.items():
        out[e[:var] + (e[var] + by,) + e[var + 1 :]] = q
    return out


def _icontent(a: dict[Exponent, int]) -> int:
    g = 0
    for v in a.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


def _int_gcd_many(polys: list[dict[Exponent, int]]) -> dict[Exponent, int]:
    acc = polys[0]
    for p in polys[1:]:
        acc = _int_gcd(acc, p)
        if acc == {_ZERO_EXP: 1}:
            break
    return acc


def _int_gcd(f: dict[Exponent, int], g: dict[Exponent, int]) -> dict[Exponent, int]:
    """gcd of integer-coefficient polynomials, primitive and positive-leading."""
    if not f:
        return _make_positive(g)
    if not g:
        return _make_positive(f)
    var = _main_var(list(f) + list(g))
    if var is None:  # both constants
        return {_ZERO_EXP: math.gcd(f.get(_ZERO_EXP, 0), g.get(_ZERO_EXP, 0))}

    fu = _as_univariate(f, var)
    gu = _as_univariate(g, var)
    f_cont = _int_gcd_many(list(fu.values()))
    g_cont = _int_gcd_many(list(gu.values()))
    cont = _int_gcd(f_cont, g_cont)

    fp = _uni_divexact_coeffs(fu, f_cont)
    gp = _uni_divexact_coeffs(gu, g_cont)

    # subresultant PRS on the primitive parts: coefficient growth is tamed by
    # exact divisions with predictable divisors, with no per-round content
    # gcds (those made the plain primitive PRS blow up on 6-variable input)
    A, B = fp, gp
    if _uni_deg(A) < _uni_deg(B):
        A, B = B, A
    g: dict[Exponent, int] = {_ZERO_EXP: 1}
    h: dict[Exponent, int] = {_ZERO_EXP: 1}
    while True:
        if _uni_deg(B) == 0:
            # B is free of the main variable while A is primitive in it, so
            # the primitive parts share only a constant factor.
            return _make_positive(cont)
        delta = _uni_deg(A) - _uni_deg(B)
        R = _uni_prem(A, B, var)
        if not R:
            prim = _uni_primitive(B)
            return _make_positive(_imul(_uni_collect(prim, var), cont))
        divisor = g
        for _ in range(delta):
            divisor = _imul(divisor, h)
        A, B = B, {d: _idivexact(c, divisor) for d, c in R.items()}
        g = A[_uni_deg(A)]
        if delta > 0:
            hnew = g
            for _ in range(delta - 1):
                hnew = _imul(hnew, g)
            for _ in range(delta - 1):
                hnew = _idivexact(hnew, h)
            h = hnew


def _uni_deg(u: dict[int, dict[Exponent, int]]) -> int:
    return max(u) if u else -1


def _uni_collect(u: dict[int, dict[Exponent, int]], var: int) -> dict[Exponent, int]:
    out: dict[Exponent, int] = {}
    for d, coeff in u.items():
        _iadd(out, _ishift(coeff, var, d))
    return out


def _uni_primitive(u: dict[int, dict[Exponent, int]]) -> dict[int, dict[Exponent, int]]:
    coeffs = list(u.values())
    g = _int_gcd_many(coeffs)
    if g == {_ZERO_EXP: 1}:
        return u
    return _uni_divexact_coeffs(u, g)


def _uni_divexact_coeffs(
    u: dict[int, dict[Exponent, int]], g: dict[Exponent, int]
) -> dict[int, dict[Exponent, int]]:
    return {d: _idivexact(coeff, g) for d, coeff in u.items()}


def _uni_prem(
    A: dict[int, dict[Exponent, int]], B: dict[int, dict[Exponent, int]], var: int
) -> dict[int, dict[Exponent, int]]:
    """Canonical pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B.

    The full power of lc(B) is kept even when interior cancellations skip
    degrees; the subresultant PRS divisions rely on it.
    """
    da, db = _uni_deg(A), _uni_deg(B)
    lb = B[db]
    R = {d: dict(c) for d, c in A.items()}
    steps = 0
    while R and _uni_deg(R) >= db:
        dr = _uni_deg(R)
        lr = R[dr]
        # R := lb*R - lr * B * main^(dr-db)
        newR: dict[int, dict[Exponent, int]] = {}
        for d, c in R.items():
            newR[d] = _imul(c, lb)
        for d, c in B.items():
            t = _imul(c, lr)
            dd = d + dr - db
            if dd in newR:
                _iadd(newR[dd], t, -1)
            else:
                newR[dd] = {e: -q for e, q in t.items()}
        R = {d: c for d, c in newR.items() if c}
        steps += 1
    for _ in range(da - db + 1 - steps):
        R = {d: _imul(c, lb) for d, c in R.items()}
    return R


def _idivexact(f: dict[Exponent, int], g: dict[Exponent, int]) -> dict[Exponent, int]:
    """Exact division of integer polynomials; raises if not divisible."""
    if not f:
        return {}
    if g == {_ZERO_EXP: 1}:
        return dict(f)
    if len(g) == 1 and _ZERO_EXP in g:
        k = g[_ZERO_EXP]
        out = {}
        for e, q in f.items():
            d, r = divmod(q, k)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out[e] = d
        return out
    rem = dict(f)
    quot: dict[Exponent, int] = {}
    ge, gq = max(g, key=_grlex_key), g[max(g, key=_grlex_key)]
    while rem:
        fe = max(rem, key=_grlex_key)
        fq = rem[fe]
        e = tuple(i - j for i, j in zip(fe, ge))
        if any(p < 0 for p in e):
            raise ArithmeticError("inexact polynomial division")
        q, r = divmod(fq, gq)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[e] = q
        for e2, q2 in g.items():
            e3 = tuple(i + j for i, j in zip(e, e2))
            s = rem.get(e3, 0) - q * q2
            if s:
                rem[e3] = s
            elif e3 in rem:
                del rem[e3]
    return quot


def _make_positive(p: dict[Exponent, int]) -> dict[Exponent, int]:
    if not p:
        return p
    if p[max(p, key=_grlex_key)] < 0:
        return {e: -q for e, q in p.items()}
    return p


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic-free gcd over Q: primitive integer gcd with positive leading term."""
    _, fi = _int_content_and_primitive(f)
    _, gi = _int_content_and_primitive(g)
    if not fi and not gi:
        return Poly()
    d = _int_gcd(fi, gi)
    return Poly({e: Fraction(q) for e, q in d.items()})


def _synthetic_divexact(f: Poly, g: Poly, var: int) -> Poly:
    """Exact division by g = L*v + t with t free of v (synthetic division).

    Linear time in the size of f; raises ArithmeticError when not divisible.
    """
    L: Fraction | None = None
    t_terms: Terms = {}
    for e, q in g.terms.items():
        if e[var]:
            L = q
        else:
            t_terms[e] = q
    assert L is not None
    t = Poly(t_terms)

    parts: dict[int, Terms] = {}
    for e, q in f.terms.items():
        d = e[var]
        parts.setdefault(d, {})[e[:var] + (0,) + e[var + 1 :]] = q
    dmax = max(parts)
    if dmax == 0:
        raise ArithmeticError("inexact polynomial division")
    quot: Terms = {}
    qi = Poly(parts.get(dmax, {})).scale(1 / L)
    for i in range(dmax - 1, -1, -1):
        for e, q in qi.terms.items():
            quot[e[:var] + (i,) + e[var + 1 :]] = q
        fi = Poly(parts.get(i, {}))
        rest = fi - t * qi
        if i == 0:
            if not rest.is_zero():
                raise ArithmeticError("inexact polynomial division")
        else:
            qi = rest.scale(1 / L)
    return Poly(quot)


def poly_divexact(f: Poly, g: Poly) -> Poly:
    """Exact division f/g of Fraction polynomials; raises if not divisible.

    Divisors that are linear in their main variable (the common case for
    denominator atoms) go through synthetic division; everything else uses
    heap-ordered long division under the monomial order, which fails fast on
    the first leading monomial that is not divisible.
    """
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return Poly()
    if g.is_const():
        return f.scale(1 / g.const_value())

    gvar = _main_var(g.terms)
    vterms = [e for e in g.terms if e[gvar]]
    if (
        len(vterms) == 1
        and vterms[0][gvar] == 1
        and sum(vterms[0]) == 1
        and len(g.terms) <= 3
    ):
        return _synthetic_divexact(f, g, gvar)

    rem = dict(f.terms)
    heap = [(-sum(e), tuple(-p for p in e)) for e in rem]
    heapq.heapify(heap)
    quot: Terms = {}
    ge = max(g.terms, key=_grlex_key)
    gq = g.terms[ge]
    gitems = list(g.terms.items())
    while rem:
        while heap:
            negtot, nege = heap[0]
            fe = tuple(-p for p in nege)
            if fe in rem:
                break
            heapq.heappop(heap)
        e = tuple(i - j for i, j in zip(fe, ge))
        if any(p < 0 for p in e):
            raise ArithmeticError("inexact polynomial division")
        q = rem[fe] / gq
        quot[e] = q
        for e2, q2 in gitems:
            e3 = tuple(i + j for i, j in zip(e, e2))
            s = rem.get(e3, Fraction(0)) - q * q2
            if s:
                if e3 not in rem:
                    heapq.heappush(heap, (-sum(e3), tuple(-p for p in e3)))
                rem[e3] = s
            elif e3 in rem:
                del rem[e3]
    return Poly(quot)


def poly_divides(g: Poly, f: Poly) -> tuple[bool, Poly | None]:
    """Does g divide f exactly?  Returns (True, quotient) or (False, None)."""
    try:
        return True, poly_divexact(f, g)
    except ArithmeticError:
        return False, None


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RatF:
    """Reduced rational function num/den in the fixed variables."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _normalized: bool = False):
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if _normalized:
            self.num, self.den = num, den
            return
        self.num, self.den = _normalize(num, den)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(value: int | Fraction) -> "RatF":
        return RatF(Poly.const(value), Poly.const(1), _normalized=True)

    @staticmethod
    def var(name: str) -> "RatF":
        return RatF(Poly.var(name), Poly.const(1), _normalized=True)

    @staticmethod
    def from_poly(p: Poly) -> "RatF":
        return RatF(p, Poly.const(1), _normalized=True)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "RatF") -> "RatF":
        return RatF(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatF") -> "RatF":
        return RatF(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatF":
        return RatF(-self.num, self.den, _normalized=True)

    def __mul__(self, other: "RatF") -> "RatF":
        return RatF(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatF") -> "RatF":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatF(self.num * other.den, self.den * other.num)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RatF)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- operations ---------------------------------------------------------

    def eval(self, point: Mapping[str, Fraction]) -> Fraction:
        """Exact evaluation; raises PoleError if the denominator vanishes."""
        missing = self.num.variables() | self.den.variables()
        missing.difference_update(point)
        if missing:
            raise ValueError(f"unassigned variables: {sorted(missing)}")
        d = self.den.eval(point)
        if d == 0:
            raise PoleError(f"denominator vanishes at {dict(point)}")
        return self.num.eval(point) / d

    def subst(self, assignment: Mapping[str, Poly]) -> "RatF":
        """Substitute polynomials for variables (e.g. a -> a + n)."""
        return RatF(self.num.subst(assignment), self.den.subst(assignment))

    def diff(self, var: str) -> "RatF":
        return RatF(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def __str__(self) -> str:
        num = str(self.num)
        if self.den.is_const() and self.den.const_value() == 1:
            return num
        return f"({num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatF({self})"


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function or Gamma at a pole."""


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Cancel the gcd and apply the denominator sign/content convention."""
    if num.is_zero():
        return Poly(), Poly.const(1)
    g = poly_gcd(num, den)
    if not (g.is_const() and g.const_value() == 1):
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    # make den integer with content 1 and positive leading coefficient
    cd, di = _int_content_and_primitive(den)
    di = dict(di)
    lead = di[max(di, key=_grlex_key)]
    sign = -1 if lead < 0 else 1
    scale = Fraction(sign) / cd
    num = num.scale(scale)
    den = Poly({e: Fraction(sign * q) for e, q in di.items()})
    return num, den


def ratf_shift(f: RatF, var: str, offset: Poly) -> RatF:
    """Substitute `var -> offset` (offset is a polynomial), renormalized."""
    return f.subst({var: offset})


def pochhammer_poly(base: Poly, count: int) -> Poly:
    """Rising factorial base*(base+1)*...*(base+count-1); count=0 gives 1."""
    if count < 0:
        raise ValueError("pochhammer count must be nonnegative")
    out = Poly.const(1)
    for i in range(count):
        out = out * (base + Poly.const(i))
    return out


def pochhammer_symbolic(base: Poly, count: int) -> RatF:
    """Rising factorial as a rational function (always a polynomial here)."""
    return RatF.from_poly(pochhammer_poly(base, count))


def pochhammer_rat(base: Fraction, count: int) -> Fraction:
    """Exact rising factorial of a rational, for integer count of either sign.

    For negative count, (z, -j) := 1/((z-j)(z-j+1)...(z-1)).
    """
    if count >= 0:
        out = Fraction(1)
        for i in range(count):
            out *= base + i
        return out
    out = Fraction(1)
    for i in range(1, -count + 1):
        f = base - i
        if f == 0:
            raise ZeroDivisionError("pochhammer with negative count hits zero factor")
        out *= f
    return 1 / out
