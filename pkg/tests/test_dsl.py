"""Closed-form DSL: parser, printer, evaluation, identity database."""

import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from f1closed.balls import PrecCtx
from f1closed.dsl import (
    Affine,
    GammaNode,
    Lit,
    ParseError,
    SchemaError,
    eval_expr,
    load_identity_table,
    parse_expr,
    print_expr,
    record_from_dict,
)
from f1closed.hyper import Params2F1, eval_2f1_series

CTX = PrecCtx.from_digits(50)

A1_RHS = "3^(8*a)/(2^(2*a)*5^(5*a))*sqrt(pi)*Gamma(2*a+1/2)/Gamma(a+1/2)^2"


def test_parse_rational_literal():
    e = parse_expr("9/5")
    assert isinstance(e, Lit) and e.value == F(9, 5)


def test_parse_a1_structure():
    e = parse_expr(A1_RHS)
    text = print_expr(e)
    assert "Gamma(2*a+1/2)" in text and "sqrt(pi)" in text


def test_parse_rejects_non_affine_gamma():
    with pytest.raises(ParseError):
        parse_expr("Gamma(a^2)")
    with pytest.raises(ParseError):
        parse_expr("Gamma(a*a)")
    with pytest.raises(ParseError):
        parse_expr("cos(pi*a^3)")


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_expr("3 + * 4")
    assert "position" in str(err.value)


def test_eval_simple():
    assert eval_expr(parse_expr("9/5"), F(0), CTX).contains(F(9, 5))
    assert eval_expr(parse_expr("2^3/4"), F(0), CTX).contains(2)
    assert eval_expr(parse_expr("-(3/2)^2"), F(0), CTX).contains(F(-9, 4))
    assert eval_expr(parse_expr("cos(pi*1/3)"), F(0), CTX).contains(F(1, 2))


def test_eval_a1_rhs_at_zero_is_one():
    assert eval_expr(parse_expr(A1_RHS), F(0), CTX).contains(1)


def test_eval_a2dprime_rhs_vs_series_oracle():
    """RHS of the 2F1(1/2,3/4;1;1/81) identity against the direct series."""
    rhs = eval_expr(
        parse_expr("9/100*sqrt(2)*5^(3/4)*Gamma(1/4)^2/pi^(3/2)"), F(0), CTX
    )
    lhs = eval_2f1_series(Params2F1(F(1, 2), F(3, 4), F(1)), F(1, 81), CTX)
    assert (lhs.value - rhs).contains_zero()
    assert str(rhs.mid_fraction())  # printable
    assert abs(float(rhs.mid_fraction()) - 1.0046934) < 1e-6


def test_affine_printing():
    assert str(Affine(F(2), F(1, 2))) == "2*a+1/2"
    assert str(Affine(F(-1), F(0))) == "-a"
    assert str(Affine(F(0), F(-3, 4))) == "-3/4"
    assert str(Affine(F(1), F(-1))) == "a-1"


def test_roundtrip_bundled_rhs():
    """print(parse(t)) is a fixed point of parse-print for every record."""
    for rec in load_identity_table():
        once = print_expr(rec.rhs)
        twice = print_expr(parse_expr(once))
        assert once == twice, rec.id


def test_eval_refinement_bundled_rhs():
    """Doubling the precision shrinks every bundled enclosure."""
    lo_ctx = PrecCtx.from_digits(25)
    hi_ctx = PrecCtx.from_digits(50)
    for rec in load_identity_table():
        a0 = rec.subst_a or F(0)
        lo = eval_expr(rec.rhs, a0, lo_ctx)
        hi = eval_expr(rec.rhs, a0, hi_ctx)
        assert hi.rad_fraction() < lo.rad_fraction(), rec.id
        assert lo.overlaps(hi), rec.id


def test_bundled_table_size_and_contents():
    records = load_identity_table()
    assert len(records) >= 40
    ids = {r.id for r in records}
    assert {"A''.3", "B''.3", "conj4", "F1val"} <= ids
    f1val = next(r for r in records if r.id == "F1val")
    assert f1val.series == "F1" and f1val.status == "conjectural"
    assert f1val.y == F(5, 6)


def test_empty_table(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("[]")
    assert load_identity_table(p) == []


def test_schema_bad_status():
    raw = {
        "id": "t1", "series": "2F1", "params": ["1/2", "1/2", "3/2"],
        "x": "1/3", "rhs": "1", "status": "maybe",
    }
    with pytest.raises(SchemaError):
        record_from_dict(raw)


def test_schema_wrong_param_count():
    raw = {
        "id": "t2", "series": "F1", "params": ["1/2", "1/2", "3/2"],
        "x": "1/3", "y": "1/4", "rhs": "1", "status": "proved",
    }
    with pytest.raises(SchemaError):
        record_from_dict(raw)


def test_schema_missing_subst():
    raw = {
        "id": "t3", "series": "2F1", "params": ["a", "1/2", "3/2"],
        "x": "1/3", "rhs": "1", "status": "proved",
    }
    with pytest.raises(SchemaError):
        record_from_dict(raw)


def test_schema_duplicate_ids(tmp_path):
    rec = {
        "id": "dup", "series": "2F1", "params": ["1/2", "1/2", "3/2"],
        "x": "1/3", "rhs": "1", "status": "proved",
    }
    p = tmp_path / "dup.json"
    p.write_text(json.dumps([rec, rec]))
    with pytest.raises(SchemaError):
        load_identity_table(p)


@given(st.integers(2, 6))
def test_non_affine_rejected(k):
    with pytest.raises(ParseError):
        parse_expr(f"Gamma(a^{k})")


@given(
    st.fractions(min_value=-4, max_value=4, max_denominator=12),
    st.fractions(min_value=-4, max_value=4, max_denominator=12),
)
def test_affine_roundtrip(slope, intercept):
    aff = Affine(slope, intercept)
    node = parse_expr(f"Gamma({aff})")
    assert isinstance(node, GammaNode)
    assert node.arg == aff
