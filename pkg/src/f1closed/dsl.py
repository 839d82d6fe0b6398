"""Closed-form expression DSL: parse, print, evaluate; identity database.

The right-hand sides of the verified identities are built from rational
literals, pi, Gamma at arguments affine in the single free symbol `a`,
square roots, powers with rational or affine-in-a exponents, and cos(pi *
affine).  The grammar (whitespace insignificant):

    expr     := term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := '-' factor | base ('^' exponent)?
    base     := rational | 'pi' | 'a' | 'sqrt' '(' expr ')'
              | 'Gamma' '(' affine ')' | 'cos' '(' 'pi' '*' affine ')'
              | '(' expr ')'
    exponent := rational | 'a' | '(' affine ')'
    affine   := rational-linear expression in 'a'

Evaluation returns a `Ball` at the requested precision.  Parsing then
printing is idempotent on the printed form (golden round-trip tests).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Union

from . import balls
from .balls import Ball, DomainError, PrecCtx
from .exact import PoleError
from .gammafn import gamma_real


class ParseError(ValueError):
    """Syntax error, with position information."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class SchemaError(ValueError):
    """Malformed identity-database record."""


@dataclass(frozen=True)
class Affine:
    """slope * a + intercept with rational coefficients."""

    slope: Fraction
    intercept: Fraction

    def at(self, a_val: Fraction) -> Fraction:
        return self.slope * a_val + self.intercept

    def is_const(self) -> bool:
        return self.slope == 0

    def __str__(self) -> str:
        if self.slope == 0:
            return str(self.intercept)
        if self.slope == 1:
            head = "a"
        elif self.slope == -1:
            head = "-a"
        else:
            head = f"{self.slope}*a"
        if self.intercept == 0:
            return head
        sign = "+" if self.intercept > 0 else "-"
        return f"{head}{sign}{abs(self.intercept)}"


class Expr:
    """Base class of closed-form AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Lit(Expr):
    value: Fraction


@dataclass(frozen=True)
class PiConst(Expr):
    pass


@dataclass(frozen=True)
class VarA(Expr):
    pass


@dataclass(frozen=True)
class GammaNode(Expr):
    arg: Affine


@dataclass(frozen=True)
class Sqrt(Expr):
    arg: Expr


@dataclass(frozen=True)
class CosPi(Expr):
    arg: Affine


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Affine


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # '+', '-', '*', '/'
    left: Expr
    right: Expr


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> None:
        self.skip_ws()
        if not self.text.startswith(ch, self.pos):
            raise self.error(f"expected {ch!r}")
        self.pos += len(ch)

    def try_eat(self, ch: str) -> bool:
        self.skip_ws()
        if self.text.startswith(ch, self.pos):
            self.pos += len(ch)
            return True
        return False

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    # -- grammar -------------------------------------------------------------

    def parse(self) -> Expr:
        e = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input")
        return e

    def expr(self) -> Expr:
        node = self.term()
        while True:
            if self.try_eat("+"):
                node = BinOp("+", node, self.term())
            elif self.try_eat("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            if self.try_eat("*"):
                node = BinOp("*", node, self.factor())
            elif self.try_eat("/"):
                node = BinOp("/", node, self.factor())
            else:
                return node

    def factor(self) -> Expr:
        if self.try_eat("-"):
            return Neg(self.factor())
        base = self.base()
        if self.try_eat("^"):
            return Pow(base, self.exponent())
        return base

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def rational(self) -> Fraction:
        num = self.integer()
        save = self.pos
        if self.try_eat("/"):
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                return Fraction(num, self.integer())
            self.pos = save
        return Fraction(num)

    def base(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.eat("(")
            e = self.expr()
            self.eat(")")
            return e
        if ch.isdigit():
            return Lit(self.rational())
        w = self.word()
        if w == "pi":
            return PiConst()
        if w == "a":
            return VarA()
        if w == "sqrt":
            self.eat("(")
            e = self.expr()
            self.eat(")")
            return Sqrt(e)
        if w == "Gamma":
            self.eat("(")
            arg = self.affine()
            self.eat(")")
            return GammaNode(arg)
        if w == "cos":
            self.eat("(")
            wpi = self.word()
            if wpi != "pi":
                raise self.error("cos argument must be pi*<affine>")
            self.eat("*")
            arg = self.affine()
            self.eat(")")
            return CosPi(arg)
        raise self.error(f"unexpected token {w or ch!r}")

    def exponent(self) -> Affine:
        if self.try_eat("("):
            arg = self.affine()
            self.eat(")")
            return arg
        self.skip_ws()
        if self.text.startswith("a", self.pos):
            self.pos += 1
            return Affine(Fraction(1), Fraction(0))
        sign = -1 if self.try_eat("-") else 1
        return Affine(Fraction(0), sign * self.rational())

    def affine(self) -> Affine:
        """Linear combination of 'a' and rationals; anything else fails."""
        slope = Fraction(0)
        intercept = Fraction(0)
        first = True
        while True:
            self.skip_ws()
            if first:
                sign = -1 if self.try_eat("-") else 1
            else:
                if self.try_eat("+"):
                    sign = 1
                elif self.try_eat("-"):
                    sign = -1
                else:
                    break
            first = False
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                q = self.rational()
                if self.try_eat("*"):
                    if self.word() != "a":
                        raise self.error("affine form allows only the symbol a")
                    slope += sign * q
                else:
                    intercept += sign * q
            elif self.text.startswith("a", self.pos):
                self.pos += 1
                if self.pos < len(self.text) and (
                    self.text[self.pos].isalnum() or self.text[self.pos] == "_"
                ):
                    raise self.error("affine form allows only the symbol a")
                if self.try_eat("^"):
                    raise self.error("argument is not affine in a")
                slope += sign * 1
            else:
                raise self.error("expected a rational or the symbol a")
        if first:
            raise self.error("empty affine expression")
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            raise self.error("argument is not affine in a")
        return Affine(slope, intercept)


def parse_expr(text: str) -> Expr:
    """Parse a closed-form expression; raises ParseError with a position."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 1, "pow": 3, "atom": 4}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _PREC["neg"]
    if isinstance(e, Pow):
        return _PREC["pow"]
    if isinstance(e, Lit) and e.value < 0:
        return _PREC["neg"]
    rational_with_bar = isinstance(e, Lit) and e.value.denominator != 1
    return _PREC["*"] if rational_with_bar else _PREC["atom"]


def print_expr(e: Expr) -> str:
    """Canonical textual form (stable under parse-print round trips)."""

    def wrap(child: Expr, need: int) -> str:
        s = print_expr(child)
        return f"({s})" if _prec(child) < need else s

    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, PiConst):
        return "pi"
    if isinstance(e, VarA):
        return "a"
    if isinstance(e, GammaNode):
        return f"Gamma({e.arg})"
    if isinstance(e, Sqrt):
        return f"sqrt({print_expr(e.arg)})"
    if isinstance(e, CosPi):
        return f"cos(pi*{e.arg})"
    if isinstance(e, Neg):
        return f"-{wrap(e.arg, _PREC['*'])}"
    if isinstance(e, Pow):
        exp = e.exponent
        if exp.is_const() and exp.intercept.denominator == 1 and exp.intercept >= 0:
            etxt = str(exp.intercept)
        else:
            etxt = f"({exp})"
        return f"{wrap(e.base, _PREC['pow'] + 1)}^{etxt}"
    if isinstance(e, BinOp):
        lhs = wrap(e.left, _PREC[e.op])
        rhs = wrap(e.right, _PREC[e.op] + (1 if e.op in "-/" else 0))
        # '*' and '+' associate; right operands of '-' and '/' need parens
        if e.op in "*+":
            rhs = wrap(e.right, _PREC[e.op])
        return f"{lhs}{e.op}{rhs}"
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def eval_expr(e: Expr, a_val: Fraction | int, ctx: PrecCtx) -> Ball:
    """Enclosure of the expression at a = a_val."""
    a_val = Fraction(a_val)
    W = ctx.working_bits

    def ev(node: Expr) -> Ball:
        if isinstance(node, Lit):
            return Ball.from_fraction(node.value, W)
        if isinstance(node, PiConst):
            return balls.pi(W)
        if isinstance(node, VarA):
            return Ball.from_fraction(a_val, W)
        if isinstance(node, GammaNode):
            return gamma_real(node.arg.at(a_val), ctx)
        if isinstance(node, Sqrt):
            return balls.sqrt(ev(node.arg), W)
        if isinstance(node, CosPi):
            return balls.cos_pi_fraction(node.arg.at(a_val), W)
        if isinstance(node, Neg):
            return -ev(node.arg)
        if isinstance(node, Pow):
            expo = node.exponent.at(a_val)
            base = ev(node.base)
            if expo.denominator == 1:
                return base ** int(expo)
            if not base.is_positive():
                raise DomainError(
                    "non-integer power of a base not strictly positive"
                )
            return balls.pow_rat(base, expo, W)
        if isinstance(node, BinOp):
            l, r = ev(node.left), ev(node.right)
            if node.op == "+":
                return l + r
            if node.op == "-":
                return l - r
            if node.op == "*":
                return l * r
            return l / r
        raise TypeError(f"unknown node {node!r}")

    return ev(e)


# ---------------------------------------------------------------------------
# identity records
# ---------------------------------------------------------------------------

_STATUSES = ("proved", "conjectural")


@dataclass(frozen=True)
class IdentityRecord:
    """One verifiable identity: a series side and a closed-form side."""

    id: str
    series: str  # "2F1" | "F1"
    params: tuple[Affine, ...]
    x: Fraction
    y: Fraction | None
    subst_a: Fraction | None
    rhs: Expr
    rhs_text: str
    status: str
    note: str
    source: str

    def resolved_params(self) -> tuple[Fraction, ...]:
        """Parameter values after applying the substitution (if any)."""
        if any(not p.is_const() for p in self.params):
            if self.subst_a is None:
                raise SchemaError(
                    f"record {self.id}: a-dependent parameters need subst_a"
                )
            return tuple(p.at(self.subst_a) for p in self.params)
        return tuple(p.intercept for p in self.params)


def _parse_affine(text: str) -> Affine:
    p = _Parser(text)
    out = p.affine()
    p.skip_ws()
    if p.pos != len(text):
        raise ParseError("trailing input in affine form", p.pos)
    return out


def _parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {text!r}: {exc}") from exc


def record_from_dict(raw: dict) -> IdentityRecord:
    rid = raw.get("id")
    if not isinstance(rid, str) or not rid:
        raise SchemaError(f"record with missing or empty id: {raw!r}")
    try:
        series = raw["series"]
        if series not in ("2F1", "F1"):
            raise SchemaError(f"record {rid}: series must be 2F1 or F1")
        params_raw = raw["params"]
        need = 3 if series == "2F1" else 4
        if not isinstance(params_raw, list) or len(params_raw) != need:
            raise SchemaError(f"record {rid}: expected {need} parameters")
        params = tuple(_parse_affine(str(t)) for t in params_raw)
        x = _parse_rat(raw["x"])
        y = _parse_rat(raw["y"]) if series == "F1" else None
        if series == "2F1" and "y" in raw:
            raise SchemaError(f"record {rid}: y is only valid for F1 records")
        subst = _parse_rat(raw["subst_a"]) if "subst_a" in raw else None
        status = raw["status"]
        if status not in _STATUSES:
            raise SchemaError(
                f"record {rid}: status must be one of {_STATUSES}, got {status!r}"
            )
        rhs_text = raw["rhs"]
        rhs = parse_expr(rhs_text)
        a_dep = any(not p.is_const() for p in params)
        if not a_dep and subst is not None:
            raise SchemaError(
                f"record {rid}: substitution given but parameters are a-free"
            )
        if a_dep and subst is None:
            raise SchemaError(f"record {rid}: a-dependent parameters need subst_a")
        return IdentityRecord(
            id=rid,
            series=series,
            params=params,
            x=x,
            y=y,
            subst_a=subst,
            rhs=rhs,
            rhs_text=rhs_text,
            status=status,
            note=str(raw.get("note", "")),
            source=str(raw.get("source", "")),
        )
    except KeyError as exc:
        raise SchemaError(f"record {rid}: missing field {exc}") from exc
    except ParseError as exc:
        raise SchemaError(f"record {rid}: {exc}") from exc


def load_identity_table(path: str | Path | None = None) -> list[IdentityRecord]:
    """Load identity records from a JSON array (bundled table by default)."""
    if path is None:
        with resources.files("f1closed.data").joinpath("identities.json").open(
            "r", encoding="utf-8"
        ) as fh:
            raw = json.load(fh)
    else:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    if not isinstance(raw, list):
        raise SchemaError("identity database must be a JSON array of records")
    records = [record_from_dict(item) for item in raw]
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise SchemaError(f"duplicate record ids: {dupes}")
    return records
