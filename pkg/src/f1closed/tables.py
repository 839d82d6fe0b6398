"""The fifteen certified closed-form F1 families.

Each row fixes a shift vector k and a sextuple (alpha; beta1, beta2; gamma,
x, y), affine in one free symbol a with a-coefficients equal to the shift
components, such that the q10 and q01 coefficients of the contiguity
relation vanish identically under par -> par + n*k.  The resulting two-term
relation F(a+1) = ratio(a) * F(a) is certified exactly; rows whose series
converge (or admit a terminating/integral route) also get numeric ratio
spot-checks at the listed sample values of a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .contiguity import ShiftVec
from .exact import Poly, RatF, pochhammer_poly

_A = Poly.var("a")


def _affine(slope, intercept) -> tuple[Fraction, Fraction]:
    return (Fraction(slope), Fraction(intercept))


def _poch(slope, intercept, count: int) -> Poly:
    return pochhammer_poly(Poly.affine("a", Fraction(slope), Fraction(intercept)), count)


def _lin(slope, intercept) -> Poly:
    return Poly.affine("a", Fraction(slope), Fraction(intercept))


@dataclass(frozen=True)
class SextupleSpec:
    """One row: shift vector, affine parameters, point, expected ratio."""

    id: str
    alpha: tuple[Fraction, Fraction]
    beta1: tuple[Fraction, Fraction]
    beta2: tuple[Fraction, Fraction]
    gamma: tuple[Fraction, Fraction]
    x: Fraction
    y: Fraction
    shift: ShiftVec
    ratio_expected: RatF
    convergent_generic: bool
    ratio_samples: tuple[Fraction, ...]
    skip_reason: str = ""

    def __post_init__(self):
        # the a-coefficients of the parameters must match the shift vector
        got = (self.alpha[0], self.beta1[0], self.beta2[0], self.gamma[0])
        want = tuple(Fraction(v) for v in self.shift.as_tuple())
        if got != want:
            raise ValueError(
                f"row {self.id}: parameter slopes {got} do not match shift {want}"
            )

    def param_images(self) -> dict[str, Poly | Fraction]:
        """Substitution map sending the generic symbols to this family."""
        return {
            "a": Poly.affine("a", *self.alpha),
            "b1": Poly.affine("a", *self.beta1),
            "b2": Poly.affine("a", *self.beta2),
            "c": Poly.affine("a", *self.gamma),
            "x": self.x,
            "y": self.y,
        }

    def params_at(self, a0: Fraction) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (
            self.alpha[0] * a0 + self.alpha[1],
            self.beta1[0] * a0 + self.beta1[1],
            self.beta2[0] * a0 + self.beta2[1],
            self.gamma[0] * a0 + self.gamma[1],
        )


def _row(
    rid, k, alpha, beta1, beta2, gamma, x, y, ratio_num, ratio_den,
    convergent, samples, skip="",
) -> SextupleSpec:
    return SextupleSpec(
        id=rid,
        alpha=_affine(*alpha),
        beta1=_affine(*beta1),
        beta2=_affine(*beta2),
        gamma=_affine(*gamma),
        x=Fraction(x),
        y=Fraction(y),
        shift=ShiftVec(*k),
        ratio_expected=RatF(ratio_num, ratio_den),
        convergent_generic=convergent,
        ratio_samples=tuple(Fraction(s) for s in samples),
        skip_reason=skip,
    )


_F = Fraction
_ONE = Poly.const(1)


CLOSED_FORM_ROWS: tuple[SextupleSpec, ...] = (
    _row(
        "A.1", (2, 1, 4, 2),
        (2, 0), (1, _F(1, 2)), (4, -1), (2, _F(1, 2)), _F(1, 81), _F(1, 6),
        Poly.const(_F(6561, 12500)) * _poch(2, _F(1, 2), 2), _lin(1, _F(1, 2)) ** 2,
        True, (_F(1, 3), _F(2, 5)),
    ),
    _row(
        "A.2", (2, 1, 4, 5),
        (2, 0), (1, _F(1, 2)), (4, -1), (5, 0), _F(80, 81), _F(5, 6),
        Poly.const(_F(6561, 12500)) * _poch(5, 0, 5),
        _lin(1, _F(1, 2)) ** 2 * _poch(3, 0, 3),
        True, (_F(1, 3), _F(2, 5)),
    ),
    _row(
        "A.3", (1, 2, -4, 1),
        (1, 0), (2, 0), (-4, 1), (1, _F(1, 2)), _F(80, 81), _F(16, 15),
        Poly.const(_F(81, 625)), _ONE,
        False, (_F(1, 4), _F(5, 4)),
    ),
    _row(
        "B.1", (2, -3, 4, 2),
        (2, 0), (-3, 1), (4, -1), (2, _F(1, 2)), _F(-1, 80), _F(5, 32),
        Poly.const(_F(64, 125)) * _poch(2, _F(1, 2), 2), _lin(1, _F(1, 2)) ** 2,
        True, (_F(1, 3), _F(2, 5)),
    ),
    _row(
        "B.2", (1, 3, 0, 5),
        (1, 0), (3, -_F(1, 2)), (0, _F(1, 2)), (5, 0), _F(-25, 2), _F(5, 32),
        Poly.const(_F(8, 3125)) * _lin(1, 0) * _poch(5, 0, 5),
        _poch(2, 0, 2) ** 2 * _poch(2, _F(1, 2), 2),
        False, (_F(1, 2), _F(1, 3)),
    ),
    _row(
        "B.3", (2, -3, 4, 1),
        (2, 0), (-3, 1), (4, -1), (1, _F(1, 2)), _F(81, 80), _F(27, 32),
        Poly.const(_F(-64, 125)), _ONE,
        False, (),
        skip="x = 81/80 > 1: series diverges and the Euler-integral factor "
             "(1 - 81t/80) vanishes inside (0,1) with non-integer exponent",
    ),
    _row(
        "B.4", (0, -1, 3, 4),
        (0, _F(1, 2)), (-1, 0), (3, _F(5, 2)), (4, _F(9, 2)), _F(27, 32), _F(5, 6),
        _poch(4, _F(9, 2), 4),
        Poly.const(64) * _lin(1, _F(3, 2)) ** 2 * _poch(2, _F(5, 2), 2),
        True, (_F(1, 4), _F(1, 3)),
    ),
    _row(
        "C.1", (2, 1, 5, 3),
        (2, 0), (1, _F(1, 2)), (5, -_F(3, 2)), (3, 0), _F(3, 128), _F(3, 8),
        Poly.const(_F(65536, 84375)) * _poch(3, 0, 3),
        _lin(1, _F(1, 2)) * _poch(2, 0, 2),
        True, (_F(1, 2), _F(1, 3)),
    ),
    _row(
        "C.2", (3, -1, 5, 2),
        (3, 0), (-1, 1), (5, -_F(3, 2)), (2, _F(1, 2)), _F(3, 128), _F(1, 16),
        Poly.const(_F(32768, 3125)) * _lin(1, 0) * _poch(2, _F(1, 2), 2),
        _poch(3, 0, 3),
        True, (_F(1, 3), _F(1, 2)),
    ),
    _row(
        "C.3", (2, 1, 5, 5),
        (2, 0), (1, _F(1, 2)), (5, -_F(3, 2)), (5, 0), _F(125, 128), _F(5, 8),
        Poly.const(_F(262144, 84375)) * _lin(1, 0) ** 2 * _poch(5, 0, 5),
        _poch(2, 0, 2) ** 2 * _poch(3, 0, 3),
        True, (_F(1, 4), _F(1, 2)),
    ),
    _row(
        "C.4", (1, -3, 5, 0),
        (1, 0), (-3, 1), (5, -_F(3, 2)), (0, _F(1, 2)), _F(125, 128), _F(25, 16),
        Poly.const(_F(2, 27)), _ONE,
        False, (),
        skip="y = 25/16 > 1: the shift moves beta2 by 5, so F(a0) and F(a0+1) "
             "cannot both terminate, and gamma > alpha fails for the integral",
    ),
    _row(
        "D.1", (2, -3, 5, 3),
        (2, 0), (-3, 1), (5, -_F(3, 2)), (3, 0), _F(-3, 125), _F(9, 25),
        Poly.const(_F(20, 27)) * _poch(3, 0, 3),
        _lin(1, _F(1, 2)) * _poch(2, 0, 2),
        True, (_F(1, 3), _F(1, 2)),
    ),
    _row(
        "D.2", (1, 1, 3, -1),
        (1, 0), (1, _F(1, 2)), (3, -_F(1, 2)), (-1, 1), _F(16, 25), _F(16),
        Poly.const(_F(25, 729)), _ONE,
        False, (),
        skip="y = 16: series diverges and the factor (1 - 16t) vanishes "
             "inside (0,1) with non-integer exponent",
    ),
    _row(
        "D.3", (5, 3, 2, 4),
        (5, 0), (3, -_F(1, 2)), (2, 0), (4, _F(1, 2)), _F(1, 25), _F(16, 25),
        Poly.const(_F(9765625, 46656)) * _lin(1, 0) * _poch(4, _F(1, 2), 4),
        _poch(5, 0, 5),
        True, (_F(1, 4), _F(1, 2)),
    ),
    _row(
        "E.1", (0, 2, 3, 3),
        (0, _F(1, 2)), (2, 0), (3, -_F(1, 2)), (3, _F(1, 2)), _F(1, 5), _F(-4, 5),
        _lin(1, _F(1, 6)) * _lin(1, _F(5, 6)),
        _lin(1, _F(1, 3)) * _lin(1, _F(2, 3)),
        True, (_F(1, 2), _F(1, 3)),
    ),
)


ROWS_BY_ID = {row.id: row for row in CLOSED_FORM_ROWS}
