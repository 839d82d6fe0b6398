"""Contiguity relations for Appell's F1 with exact rational-function coefficients.

For a shift vector k = (k; l1, l2; m) of the parameters (alpha; beta1, beta2;
gamma), there is a unique triple (Q10, Q01, Q00) of rational functions with

    F1(par + k) = Q10*F1(par + e10) + Q01*F1(par + e01) + Q00*F1(par),

where e10 = (1;1,0;1) and e01 = (1;0,1;1).  The derivation works in the
rank-3 module spanned by {F1, dF1/dx, dF1/dy}: the partial differential
system satisfied by F1 reduces every higher derivative to that basis, the
parameter shifts alpha+1, beta1+1, beta2+1 and gamma-1 act by explicit
first-order operators, and arbitrary shifts are reached by composing unit
steps from a common anchor so that only these four cheap directions are ever
needed.  A single 3x3 solve (Cramer) at the end produces the triple.

Coefficient arithmetic is the hot path, so this module keeps its own integer
representation: packed exponent keys, int coefficients with a rational
content factor, and denominators held as multisets of small linear atoms
that are cancelled eagerly by synthetic-division probes.  Results convert to
the public `RatF` form on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exact import NVARS, VARS, Poly, RatF

# ---------------------------------------------------------------------------
# packed-exponent integer polynomials (internal)
# ---------------------------------------------------------------------------

_PACK_BITS = 10
_PACK_MASK = (1 << _PACK_BITS) - 1
_SHIFTS = {name: _PACK_BITS * i for i, name in enumerate(VARS)}
_DEG_LIMIT = _PACK_MASK // 2  # headroom so exponent adds cannot overflow fields


def _pack(e: tuple[int, ...]) -> int:
    out = 0
    for i, p in enumerate(e):
        out |= p << (_PACK_BITS * i)
    return out


def _unpack(e: int) -> tuple[int, ...]:
    return tuple((e >> (_PACK_BITS * i)) & _PACK_MASK for i in range(NVARS))


ITerms = dict[int, int]


class IPoly:
    """content * (integer-coefficient polynomial with packed exponents)."""

    __slots__ = ("content", "t")

    def __init__(self, content: Fraction, t: ITerms):
        self.content = content
        self.t = t

    @staticmethod
    def zero() -> "IPoly":
        return IPoly(Fraction(0), {})

    @staticmethod
    def const(q: int | Fraction) -> "IPoly":
        q = Fraction(q)
        return IPoly(q, {0: 1}) if q else IPoly.zero()

    @staticmethod
    def from_poly(p: Poly) -> "IPoly":
        if not p.terms:
            return IPoly.zero()
        den_lcm = 1
        for q in p.terms.values():
            den_lcm = den_lcm * q.denominator // math.gcd(den_lcm, q.denominator)
        t: ITerms = {}
        for e, q in p.terms.items():
            if any(pw > _DEG_LIMIT for pw in e):
                raise OverflowError("exponent exceeds packed-degree limit")
            t[_pack(e)] = int(q * den_lcm)
        g = 0
        for v in t.values():
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            t = {e: v // g for e, v in t.items()}
        return IPoly(Fraction(g, den_lcm), t)

    def to_poly(self) -> Poly:
        return Poly({_unpack(e): self.content * v for e, v in self.t.items()})

    def is_zero(self) -> bool:
        return not self.t

    def _normalized(self) -> "IPoly":
        if not self.t:
            return IPoly.zero()
        g = 0
        for v in self.t.values():
            g = math.gcd(g, v)
            if g == 1:
                return self
        if g > 1:
            self.t = {e: v // g for e, v in self.t.items()}
            self.content *= g
        return self

    def __add__(self, other: "IPoly") -> "IPoly":
        if not self.t:
            return other
        if not other.t:
            return self
        ca, cb = self.content, other.content
        g = Fraction(
            math.gcd(ca.numerator, cb.numerator),
            (ca.denominator * cb.denominator)
            // math.gcd(ca.denominator, cb.denominator),
        )
        ma = int(ca / g)
        mb = int(cb / g)
        out: ITerms = {e: v * ma for e, v in self.t.items()}
        for e, v in other.t.items():
            s = out.get(e, 0) + v * mb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return IPoly(g, out)._normalized()

    def __neg__(self) -> "IPoly":
        return IPoly(-self.content, self.t)

    def __sub__(self, other: "IPoly") -> "IPoly":
        return self + (-other)

    def __mul__(self, other: "IPoly") -> "IPoly":
        if not self.t or not other.t:
            return IPoly.zero()
        a, b = self.t, other.t
        if len(a) < len(b):
            a, b = b, a
        out: ITerms = {}
        get = out.get
        for eb, vb in b.items():
            for ea, va in a.items():
                e = ea + eb
                s = get(e, 0) + va * vb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return IPoly(self.content * other.content, out)._normalized()

    def __pow__(self, k: int) -> "IPoly":
        result = IPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, q: Fraction) -> "IPoly":
        if not q:
            return IPoly.zero()
        return IPoly(self.content * q, self.t)

    def diff(self, var: str) -> "IPoly":
        sh = _SHIFTS[var]
        out: ITerms = {}
        for e, v in self.t.items():
            p = (e >> sh) & _PACK_MASK
            if p:
                e2 = e - (1 << sh)
                s = out.get(e2, 0) + v * p
                if s:
                    out[e2] = s
                elif e2 in out:
                    del out[e2]
        return IPoly(self.content, out)._normalized()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IPoly)
            and self.content == other.content
            and self.t == other.t
        )

    def __hash__(self) -> int:
        return hash((self.content, frozenset(self.t.items())))

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"IPoly({self.to_poly()})"


def _ivar(name: str) -> IPoly:
    return IPoly(Fraction(1), {1 << _SHIFTS[name]: 1})


# An atom is a monic linear factor: var + rest where rest is an integer or a
# (+/-1)-scaled monomial in another variable; stored packed for fast probes.
@dataclass(frozen=True)
class Atom:
    """Linear denominator factor var + c0 + c1*other (c1 in {0, +/-1})."""

    var: str
    const: int
    other: str | None = None
    other_sign: int = 0

    def to_ipoly(self) -> IPoly:
        t: ITerms = {1 << _SHIFTS[self.var]: 1}
        if self.const:
            t[0] = self.const
        if self.other is not None:
            t[1 << _SHIFTS[self.other]] = self.other_sign
        return IPoly(Fraction(1), t)

    def to_poly(self) -> Poly:
        return self.to_ipoly().to_poly()

    def eval(self, point: Mapping[str, Fraction]) -> Fraction:
        val = Fraction(point[self.var]) + self.const
        if self.other is not None:
            val += self.other_sign * Fraction(point[self.other])
        return val

    def subst_poly(self, assignment: Mapping[str, Poly]) -> Poly:
        out = assignment.get(self.var, Poly.var(self.var)) + Poly.const(self.const)
        if self.other is not None:
            out = out + assignment.get(self.other, Poly.var(self.other)).scale(
                Fraction(self.other_sign)
            )
        return out

    def __str__(self) -> str:
        s = self.var
        if self.other is not None:
            s += ("+" if self.other_sign > 0 else "-") + self.other
        if self.const:
            s += f"{self.const:+d}"
        return s


def _atom_divide(t: ITerms, atom: Atom) -> ITerms | None:
    """Synthetic division of integer terms by a monic linear atom.

    Returns the quotient terms, or None when the division is inexact.
    Substituting var -> -(const + sign*other) is folded into one pass.
    """
    sh = _SHIFTS[atom.var]
    parts: dict[int, ITerms] = {}
    for e, v in t.items():
        d = (e >> sh) & _PACK_MASK
        parts.setdefault(d, {})[e - (d << sh)] = v
    dmax = max(parts)
    if dmax == 0:
        return None
    c0 = atom.const
    osh = _SHIFTS[atom.other] if atom.other is not None else None
    osign = atom.other_sign
    quot: ITerms = {}
    qi = parts.get(dmax, {})
    for i in range(dmax - 1, -1, -1):
        step = 1 << sh
        for e, v in qi.items():
            quot[e + (i << sh)] = v
        # rest = f_i - (c0 + sign*other) * qi
        rest = dict(parts.get(i, {}))
        if c0:
            for e, v in qi.items():
                s = rest.get(e, 0) - c0 * v
                if s:
                    rest[e] = s
                elif e in rest:
                    del rest[e]
        if osh is not None:
            for e, v in qi.items():
                e2 = e + (1 << osh)
                s = rest.get(e2, 0) - osign * v
                if s:
                    rest[e2] = s
                elif e2 in rest:
                    del rest[e2]
        if i == 0:
            if rest:
                return None
        else:
            qi = rest
    return quot


class FRat:
    """num / prod(atom^power) with eager cancellation against the atoms."""

    __slots__ = ("num", "den")

    def __init__(self, num: IPoly, den: dict[Atom, int] | None = None):
        self.num = num
        self.den: dict[Atom, int] = den or {}

    @staticmethod
    def const(q: int | Fraction) -> "FRat":
        return FRat(IPoly.const(q))

    @staticmethod
    def zero() -> "FRat":
        return FRat(IPoly.zero())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _cancel(self) -> "FRat":
        if self.num.is_zero():
            self.den = {}
            return self
        t = self.num.t
        den = self.den
        changed = False
        for atom in list(den):
            while den.get(atom, 0) > 0:
                q = _atom_divide(t, atom)
                if q is None:
                    break
                t = q
                den[atom] -= 1
                changed = True
            if den.get(atom) == 0:
                del den[atom]
        if changed:
            self.num = IPoly(self.num.content, t)._normalized()
        return self

    def __add__(self, other: "FRat") -> "FRat":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        n1, n2 = self.num, other.num
        den: dict[Atom, int] = {}
        for atom in set(self.den) | set(other.den):
            p1 = self.den.get(atom, 0)
            p2 = other.den.get(atom, 0)
            top = max(p1, p2)
            den[atom] = top
            if top > p1:
                n1 = n1 * atom.to_ipoly() ** (top - p1)
            if top > p2:
                n2 = n2 * atom.to_ipoly() ** (top - p2)
        return FRat(n1 + n2, den)._cancel()

    def __sub__(self, other: "FRat") -> "FRat":
        return self + (-other)

    def __neg__(self) -> "FRat":
        return FRat(-self.num, dict(self.den))

    def __mul__(self, other: "FRat") -> "FRat":
        if self.num.is_zero() or other.num.is_zero():
            return FRat.zero()
        den = dict(self.den)
        for atom, p in other.den.items():
            den[atom] = den.get(atom, 0) + p
        return FRat(self.num * other.num, den)._cancel()

    def scale(self, q: Fraction) -> "FRat":
        return FRat(self.num.scale(q), dict(self.den))

    def div_atom(self, atom: Atom, power: int = 1) -> "FRat":
        den = dict(self.den)
        den[atom] = den.get(atom, 0) + power
        return FRat(self.num, den)._cancel()

    def diff(self, var: str) -> "FRat":
        out = FRat(self.num.diff(var), dict(self.den))
        for atom, p in self.den.items():
            if atom.var == var:
                dval = 1
            elif atom.other == var:
                dval = atom.other_sign
            else:
                continue
            den = dict(self.den)
            den[atom] = den.get(atom, 0) + 1
            out = out + FRat(self.num.scale(Fraction(-p * dval)), den)
        return out

    def den_poly(self) -> Poly:
        out = Poly.const(1)
        for atom, p in self.den.items():
            out = out * atom.to_poly() ** p
        return out

    def to_ratf(self) -> RatF:
        return RatF(self.num.to_poly(), self.den_poly())

    def eval(self, point: Mapping[str, Fraction]) -> Fraction:
        val = self.num.to_poly().eval(point)
        for atom, p in self.den.items():
            a = atom.eval(point)
            if a == 0:
                raise ZeroDivisionError("denominator atom vanishes at the point")
            val /= a**p
        return val

    def subst_ratf(self, assignment: Mapping[str, Poly]) -> RatF:
        num = self.num.to_poly().subst(assignment)
        den = Poly.const(1)
        for atom, p in self.den.items():
            den = den * atom.subst_poly(assignment) ** p
        return RatF(num, den)

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"FRat({self.to_ratf()})"


Vec = tuple[FRat, FRat, FRat]

# ---------------------------------------------------------------------------
# derivative reduction in the {F, Fx, Fy} module
# ---------------------------------------------------------------------------

_AX = Atom("x", 0)
_AXM1 = Atom("x", -1)
_AY = Atom("y", 0)
_AYM1 = Atom("y", -1)
_AXMY = Atom("x", 0, "y", -1)

_IX = _ivar("x")
_IY = _ivar("y")
_IONE = IPoly.const(1)


@dataclass(frozen=True)
class _Params:
    """Offsets of (alpha, beta1, beta2, gamma) relative to the symbols."""

    da: int
    db1: int
    db2: int
    dc: int

    def A(self) -> IPoly:
        return _ivar("a") + IPoly.const(self.da)

    def B1(self) -> IPoly:
        return _ivar("b1") + IPoly.const(self.db1)

    def B2(self) -> IPoly:
        return _ivar("b2") + IPoly.const(self.db2)

    def C(self) -> IPoly:
        return _ivar("c") + IPoly.const(self.dc)


def _reduction_coeffs(p: _Params) -> dict[str, FRat]:
    """Coefficients expressing Fxx, Fxy, Fyy in terms of (F, Fx, Fy).

    From the rank-3 system for F1:
        (x - y) Fxy = beta2*Fx - beta1*Fy
        x(1-x) Fxx + y(1-x) Fxy + [gamma - (alpha+beta1+1)x] Fx
                   - beta1*y*Fy - alpha*beta1*F = 0
        y(1-y) Fyy + x(1-y) Fxy + [gamma - (alpha+beta2+1)y] Fy
                   - beta2*x*Fx - alpha*beta2*F = 0
    """
    A, B1, B2, C = p.A(), p.B1(), p.B2(), p.C()
    one_m_x = _IONE - _IX
    one_m_y = _IONE - _IY
    x_m_y = _IX - _IY

    def frac(num: IPoly, *atoms: Atom) -> FRat:
        out = FRat(num)
        for a in atoms:
            out = out.div_atom(a)
        return out

    cxa = C - (A + B1 + _IONE) * _IX
    cya = C - (A + B2 + _IONE) * _IY
    return {
        # x(1-x) = -x(x-1), y(1-y) = -y(y-1); signs folded into numerators
        "xy1": frac(B2, _AXMY),
        "xy2": frac(-B1, _AXMY),
        "xx0": frac(-(A * B1), _AX, _AXM1),
        "xx1": frac(cxa * x_m_y + _IY * one_m_x * B2, _AX, _AXM1, _AXMY),
        "xx2": frac(-(B1 * _IY * one_m_y), _AX, _AXM1, _AXMY),
        "yy0": frac(-(A * B2), _AY, _AYM1),
        "yy1": frac(B2 * _IX * one_m_x, _AY, _AYM1, _AXMY),
        "yy2": frac(cya * x_m_y - _IX * one_m_y * B1, _AY, _AYM1, _AXMY),
    }


def _apply_dx(v: Vec, r: dict[str, FRat]) -> Vec:
    c0, c1, c2 = v
    return (
        c0.diff("x") + c1 * r["xx0"],
        c0 + c1.diff("x") + c1 * r["xx1"] + c2 * r["xy1"],
        c2.diff("x") + c1 * r["xx2"] + c2 * r["xy2"],
    )


def _apply_dy(v: Vec, r: dict[str, FRat]) -> Vec:
    c0, c1, c2 = v
    return (
        c0.diff("y") + c2 * r["yy0"],
        c1.diff("y") + c1 * r["xy1"] + c2 * r["yy1"],
        c0 + c2.diff("y") + c1 * r["xy2"] + c2 * r["yy2"],
    )


def _unit_matrix(kind: str, p: _Params) -> tuple[Vec, Vec, Vec]:
    """Transport matrix of one easy unit step, built at the source parameters.

    Rows give (F1, Fx, Fy) at the stepped parameters in the source basis:
        alpha+1:  F1(a+1)  = (1/a)(x d/dx + y d/dy + a) F1
        beta1+1:  F1(b1+1) = (1/b1)(x d/dx + b1) F1
        beta2+1:  F1(b2+1) = (1/b2)(y d/dy + b2) F1
        gamma-1:  F1(c-1)  = (1/(c-1))(x d/dx + y d/dy + c-1) F1
    """
    one = FRat.const(1)
    zero = FRat.zero()
    if kind == "a+":
        at = Atom("a", p.da)
        row1: Vec = (one, FRat(_IX).div_atom(at), FRat(_IY).div_atom(at))
    elif kind == "b1+":
        at = Atom("b1", p.db1)
        row1 = (one, FRat(_IX).div_atom(at), zero)
    elif kind == "b2+":
        at = Atom("b2", p.db2)
        row1 = (one, zero, FRat(_IY).div_atom(at))
    elif kind == "c-":
        at = Atom("c", p.dc - 1)
        row1 = (one, FRat(_IX).div_atom(at), FRat(_IY).div_atom(at))
    else:  # pragma: no cover - internal
        raise ValueError(kind)
    r = _reduction_coeffs(p)
    return (row1, _apply_dx(row1, r), _apply_dy(row1, r))


def _vec_times_matrix(u: Vec, m: tuple[Vec, Vec, Vec]) -> Vec:
    return (
        u[0] * m[0][0] + u[1] * m[1][0] + u[2] * m[2][0],
        u[0] * m[0][1] + u[1] * m[1][1] + u[2] * m[2][1],
        u[0] * m[0][2] + u[1] * m[1][2] + u[2] * m[2][2],
    )


# ---------------------------------------------------------------------------
# shifts and relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftVec:
    """Integer parameter shift (k; l1, l2; m)."""

    k: int
    l1: int
    l2: int
    m: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k, self.l1, self.l2, self.m)

    def __add__(self, other: "ShiftVec") -> "ShiftVec":
        return ShiftVec(
            self.k + other.k,
            self.l1 + other.l1,
            self.l2 + other.l2,
            self.m + other.m,
        )

    def __str__(self) -> str:
        return f"({self.k},{self.l1},{self.l2},{self.m})"


E10 = ShiftVec(1, 1, 0, 1)
E01 = ShiftVec(1, 0, 1, 1)


class DegenerateRelationError(RuntimeError):
    """The 3x3 solve for a contiguity relation lost full rank."""


def _specialize_ipoly(p: IPoly, images: Mapping[str, Poly | Fraction]) -> Poly:
    """Substitute constants / low-variable polynomials into an IPoly.

    Terms are bucketed by their exponent pattern over the polynomial-valued
    variables, so the expensive polynomial products happen once per pattern
    instead of once per term.
    """
    if p.is_zero():
        return Poly()
    const_idx: list[tuple[int, Fraction]] = []
    poly_idx: list[tuple[int, Poly]] = []
    for i, name in enumerate(VARS):
        img = images.get(name)
        if img is None:
            poly_idx.append((i, Poly.var(name)))
        elif isinstance(img, Poly):
            if img.is_const():
                const_idx.append((i, img.const_value()))
            else:
                poly_idx.append((i, img))
        else:
            const_idx.append((i, Fraction(img)))

    buckets: dict[tuple[int, ...], Fraction] = {}
    cpows: dict[tuple[int, int], Fraction] = {}
    for e, v in p.t.items():
        scalar = Fraction(v)
        for i, cv in const_idx:
            pw = (e >> (_PACK_BITS * i)) & _PACK_MASK
            if pw:
                key = (i, pw)
                val = cpows.get(key)
                if val is None:
                    val = cv**pw
                    cpows[key] = val
                scalar *= val
        pkey = tuple((e >> (_PACK_BITS * i)) & _PACK_MASK for i, _ in poly_idx)
        buckets[pkey] = buckets.get(pkey, Fraction(0)) + scalar

    ppows: dict[tuple[int, int], Poly] = {}
    out = Poly()
    for pkey, scalar in buckets.items():
        if not scalar:
            continue
        term = Poly.const(scalar * p.content)
        for (i, img), pw in zip(poly_idx, pkey):
            if pw:
                key = (i, pw)
                powed = ppows.get(key)
                if powed is None:
                    powed = img**pw
                    ppows[key] = powed
                term = term * powed
        out = out + term
    return out


def _specialize_frat(f: FRat, images: Mapping[str, Poly | Fraction]) -> RatF:
    num = _specialize_ipoly(f.num, images)
    den = Poly.const(1)
    assign_polys = {
        name: (img if isinstance(img, Poly) else Poly.const(img))
        for name, img in images.items()
    }
    for atom, p in f.den.items():
        den = den * atom.subst_poly(assign_polys) ** p
    return RatF(num, den)


class ContigRel:
    """Exact coefficients of the four-term relation for one shift vector.

    The relation is held as the four rows expressing F1 at the shifted
    parameter points in the module basis {F1, dF1/dx, dF1/dy} at a common
    anchor; the Cramer solve producing (q10, q01, q00) runs lazily.  Most
    consumers evaluate or specialize the rows first, which keeps the solve
    on scalars or univariate polynomials; the fully reduced generic RatF
    coefficients (the only step needing big multivariate gcds) are computed
    only on demand.
    """

    __slots__ = ("shift", "_rows", "_perm", "_pieces_cache", "_reduced")

    def __init__(self, shift: ShiftVec, rows: dict[str, Vec], perm: list[int]):
        self.shift = shift
        self._rows = rows
        self._perm = perm
        self._pieces_cache: tuple[FRat, FRat, FRat, FRat] | None = None
        self._reduced: dict[str, RatF] = {}

    def _pieces(self) -> tuple[FRat, FRat, FRat, FRat]:
        """Cramer numerators and denominator as (generic, unreduced) pieces."""
        if self._pieces_cache is None:
            uk = self._rows["k"]
            basis = [self._rows["e10"], self._rows["e01"], self._rows["base"]]
            cols = [basis[i] for i in self._perm]
            d = _dot(cols[0], _cofactor(cols[1], cols[2]))
            if d.is_zero():
                raise DegenerateRelationError(
                    f"basis {{F1+e10, F1+e01, F1}} is dependent for shift {self.shift}"
                )
            nums_perm = [
                _dot(uk, _cofactor(cols[1], cols[2])),
                -_dot(uk, _cofactor(cols[0], cols[2])),
                _dot(uk, _cofactor(cols[0], cols[1])),
            ]
            nums: list[FRat] = [FRat.zero()] * 3
            for pos, i in enumerate(self._perm):
                nums[i] = nums_perm[pos]
            self._pieces_cache = (nums[0], nums[1], nums[2], d)
        return self._pieces_cache

    def _get(self, name: str, idx: int) -> RatF:
        out = self._reduced.get(name)
        if out is None:
            pieces = self._pieces()
            out = _fr_quotient(pieces[idx], pieces[3])
            self._reduced[name] = out
        return out

    @property
    def q10(self) -> RatF:
        return self._get("q10", 0)

    @property
    def q01(self) -> RatF:
        return self._get("q01", 1)

    @property
    def q00(self) -> RatF:
        return self._get("q00", 2)

    def coefficients(self) -> tuple[RatF, RatF, RatF]:
        return (self.q10, self.q01, self.q00)

    def eval_at(
        self, point: Mapping[str, Fraction]
    ) -> tuple[Fraction, Fraction, Fraction]:
        """Exact values of (q10, q01, q00) at a rational point.

        Evaluates the rows first and solves the 3x3 system on scalars; no
        polynomial determinants are ever expanded.
        """
        ev = {name: [f.eval(point) for f in vec] for name, vec in self._rows.items()}
        return _cramer_scalar(ev["k"], ev["e10"], ev["e01"], ev["base"])

    def specialize(
        self, images: Mapping[str, Poly | Fraction]
    ) -> tuple[RatF, RatF, RatF]:
        """Coefficients after substituting the variables (e.g. a Table-1 row).

        The rows are specialized first (cheap - buckets of exponent
        patterns), then the Cramer solve runs over the specialized, usually
        univariate, rational functions.  Raises DegenerateRelationError when
        the specialized basis loses rank; in the nonsingular case the result
        equals the specialization of the generic coefficients.
        """
        sp = {
            name: [_specialize_frat(f, images) for f in vec]
            for name, vec in self._rows.items()
        }
        return _cramer_ratf(sp["k"], sp["e10"], sp["e01"], sp["base"])


def _cramer_scalar(
    uk: list[Fraction],
    u10: list[Fraction],
    u01: list[Fraction],
    u0: list[Fraction],
) -> tuple[Fraction, Fraction, Fraction]:
    def det3(r0, r1, r2) -> Fraction:
        return (
            r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
            - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
            + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
        )

    d = det3(u10, u01, u0)
    if d == 0:
        raise DegenerateRelationError("basis determinant vanishes at the point")
    return (
        det3(uk, u01, u0) / d,
        det3(u10, uk, u0) / d,
        det3(u10, u01, uk) / d,
    )


def _cramer_ratf(
    uk: list[RatF], u10: list[RatF], u01: list[RatF], u0: list[RatF]
) -> tuple[RatF, RatF, RatF]:
    def det3(r0, r1, r2) -> RatF:
        return (
            r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
            - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
            + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
        )

    d = det3(u10, u01, u0)
    if d.is_zero():
        raise DegenerateRelationError(
            "basis determinant vanishes identically under specialization"
        )
    return (
        det3(uk, u01, u0) / d,
        det3(u10, uk, u0) / d,
        det3(u10, u01, uk) / d,
    )


def _fr_quotient(n: FRat, d: FRat) -> RatF:
    """Fully reduced RatF for n/d."""
    if n.is_zero():
        return RatF.from_poly(Poly())
    nden = dict(n.den)
    dden = dict(d.den)
    for atom in list(nden):
        if atom in dden:
            common = min(nden[atom], dden[atom])
            nden[atom] -= common
            dden[atom] -= common
    num = n.num.to_poly()
    for atom, p in dden.items():
        if p:
            num = num * atom.to_poly() ** p
    den = d.num.to_poly()
    for atom, p in nden.items():
        if p:
            den = den * atom.to_poly() ** p
    return RatF(num, den)


def _mul_raw(f: FRat, g: FRat) -> FRat:
    """Product without cancellation probes (for big determinant folds)."""
    if f.num.is_zero() or g.num.is_zero():
        return FRat.zero()
    den = dict(f.den)
    for atom, p in g.den.items():
        den[atom] = den.get(atom, 0) + p
    return FRat(f.num * g.num, den)


def _add_raw(f: FRat, g: FRat) -> FRat:
    """Sum over the aligned denominator, without cancellation probes."""
    if f.num.is_zero():
        return g
    if g.num.is_zero():
        return f
    n1, n2 = f.num, g.num
    den: dict[Atom, int] = {}
    for atom in set(f.den) | set(g.den):
        p1 = f.den.get(atom, 0)
        p2 = g.den.get(atom, 0)
        top = max(p1, p2)
        den[atom] = top
        if top > p1:
            n1 = n1 * atom.to_ipoly() ** (top - p1)
        if top > p2:
            n2 = n2 * atom.to_ipoly() ** (top - p2)
    return FRat(n1 + n2, den)


def _cofactor(v: Vec, w: Vec) -> Vec:
    """Vector such that det[u; v; w] = u . cofactor(v, w)."""
    return (
        _add_raw(_mul_raw(v[1], w[2]), -_mul_raw(v[2], w[1]))._cancel(),
        _add_raw(_mul_raw(v[2], w[0]), -_mul_raw(v[0], w[2]))._cancel(),
        _add_raw(_mul_raw(v[0], w[1]), -_mul_raw(v[1], w[0]))._cancel(),
    )


def _dot(u: Vec, v: Vec) -> FRat:
    acc = _add_raw(
        _add_raw(_mul_raw(u[0], v[0]), _mul_raw(u[1], v[1])),
        _mul_raw(u[2], v[2]),
    )
    return acc._cancel()


def _target_vector(
    shift: tuple[int, int, int, int],
    anchor: tuple[int, int, int, int],
    memo: dict,
) -> Vec:
    """Row of F1(par+shift) in the basis at the anchor parameters.

    The path applies gamma-lowering first, then alpha, beta1, beta2 raises,
    one unit at a time; every step matrix is cached by (kind, offsets).
    """
    sa, sb1, sb2, sc = anchor
    ta, tb1, tb2, tc = shift
    steps: list[str] = []
    steps += ["c-"] * (sc - tc)
    steps += ["a+"] * (ta - sa)
    steps += ["b1+"] * (tb1 - sb1)
    steps += ["b2+"] * (tb2 - sb2)

    offs = [anchor]
    cur = [sa, sb1, sb2, sc]
    for kind in steps:
        if kind == "c-":
            cur[3] -= 1
        elif kind == "a+":
            cur[0] += 1
        elif kind == "b1+":
            cur[1] += 1
        else:
            cur[2] += 1
        offs.append(tuple(cur))

    u: Vec = (FRat.const(1), FRat.zero(), FRat.zero())
    for i in range(len(steps) - 1, -1, -1):
        kind = steps[i]
        src = offs[i]
        key = (kind, src)
        m = memo.get(key)
        if m is None:
            m = _unit_matrix(kind, _Params(*src))
            memo[key] = m
        u = _vec_times_matrix(u, m)
    return u


_relation_cache: dict[tuple[int, int, int, int], ContigRel] = {}


def derive_contiguity(kvec: ShiftVec, *, pivot_order: int = 0) -> ContigRel:
    """Derive the exact four-term relation for an arbitrary integer shift.

    The basis rows (e10, e01, identity) involve at most three unit steps and
    stay tiny, so Cramer's rule pairs the single expensive row F1(par+k)
    with cheap cofactors.  `pivot_order` permutes the basis ordering in the
    solve; the normalized result must not depend on it (uniqueness tests).
    """
    key = kvec.as_tuple()
    if pivot_order == 0 and key in _relation_cache:
        return _relation_cache[key]

    targets = {
        "k": kvec.as_tuple(),
        "e10": E10.as_tuple(),
        "e01": E01.as_tuple(),
        "base": (0, 0, 0, 0),
    }
    anchor = (
        min(t[0] for t in targets.values()),
        min(t[1] for t in targets.values()),
        min(t[2] for t in targets.values()),
        max(t[3] for t in targets.values()),
    )
    memo: dict = {}
    rows = {name: _target_vector(t, anchor, memo) for name, t in targets.items()}
    perm = [0, 1, 2]
    if pivot_order:
        rot = pivot_order % 3
        perm = [(i + rot) % 3 for i in range(3)]
    rel = ContigRel(kvec, rows, perm)
    if pivot_order == 0:
        _relation_cache[key] = rel
    return rel
