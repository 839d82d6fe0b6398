"""Laplace-limit machinery: phase analysis, sequence, extrapolation."""

from fractions import Fraction as F

import pytest

from f1closed import balls
from f1closed.balls import Ball, PrecCtx
from f1closed.asymptotics import (
    EXAMPLE_PHASE,
    LimitSequence,
    PhaseFn,
    a_factor,
    asymptotic_forms_check,
    b_factor,
    b_factor_quadrature,
    critical_points,
    emit_phase_csv,
    emit_sequence_csv,
    laplace_sequence,
    richardson_extrapolate,
    sequence_term,
)

CTX = PrecCtx.from_digits(50)
W = CTX.working_bits


def test_phase_derivative_matches_closed_form():
    """h'(t) = 15(256 t^2 - 352 t + 81) / (t (15 - 16 t)(81 - 80 t))."""
    num = EXAMPLE_PHASE.h_prime_numerator()
    for t in (F(1, 7), F(2, 5), F(9, 10)):
        mine = sum(c * t**i for i, c in enumerate(num))
        mine /= t * (1 - F(80, 81) * t) * (1 - F(16, 15) * t)
        ref = 15 * (256 * t * t - 352 * t + 81) / (t * (15 - 16 * t) * (81 - 80 * t))
        assert mine == ref


def test_critical_point_and_h_values():
    crits = critical_points(EXAMPLE_PHASE, CTX)
    assert len(crits) == 1
    root, hval = crits[0]
    t0 = Ball.from_fraction(F(11, 16), W) - balls.sqrt(
        Ball.from_fraction(F(10), W)
    ).mul_fraction(F(1, 8))
    assert (root - t0).contains_zero()
    log_ref = balls.log(Ball.from_fraction(F(81, 625), W))
    assert (hval - log_ref).contains_zero()
    # h(1) equals the same value
    h1 = EXAMPLE_PHASE.h_at(F(1), CTX)
    assert (h1 - log_ref).contains_zero()
    # h'(root) encloses zero by construction
    num = EXAMPLE_PHASE.h_prime_numerator()
    acc = Ball(0, 0, 0, W)
    for c in reversed(num):
        acc = acc * root + Ball.from_fraction(c, W)
    assert acc.contains_zero()


def test_pure_log_phase_has_no_interior_critical_point():
    ph = PhaseFn(F(1), ())
    assert critical_points(ph, CTX) == []


def test_sequence_terms_contain_nine_fifths():
    seq = laplace_sequence(list(range(0, 7)), CTX)
    for n, t in zip(seq.ns, seq.terms):
        assert t.contains(F(9, 5)), f"term({n})"
    # terms are pairwise overlapping (they are all the same constant)
    for i in range(len(seq.terms) - 1):
        assert seq.terms[i].overlaps(seq.terms[i + 1])


def test_sequence_term_zero_is_exact_series_value():
    t0 = sequence_term(0, CTX)
    assert t0.contains(F(9, 5))
    assert t0.rad_fraction() < F(1, 10**45)


def test_n_max_guard():
    with pytest.raises(ValueError):
        laplace_sequence([250], CTX)


def test_richardson_trivial():
    prec = CTX.working_bits
    ns = [1, 2, 3, 4, 5]
    seq = LimitSequence(
        tuple(ns), tuple(Ball.from_fraction(2 + F(3, n), prec) for n in ns)
    )
    out = richardson_extrapolate(seq)
    assert out.contains(2)
    const = LimitSequence(
        tuple(ns), tuple(Ball.from_fraction(F(5), prec) for n in ns)
    )
    assert richardson_extrapolate(const).contains(5)


def test_richardson_needs_three_terms():
    with pytest.raises(ValueError):
        richardson_extrapolate(
            LimitSequence((1, 2), (Ball(0, 0, 0, 64), Ball(0, 0, 0, 64)))
        )


def test_asymptotic_ratios_small_n():
    rows = asymptotic_forms_check([8, 16], CTX)
    r8, r16 = rows
    for r in rows:
        assert F(9, 10) < r.a_ratio.mid_fraction() < F(11, 10)
        assert F(9, 10) < r.b_ratio.mid_fraction() < F(11, 10)
    # monotone approach to 1
    assert abs(r16.a_ratio.mid_fraction() - 1) < abs(r8.a_ratio.mid_fraction() - 1)
    assert abs(r16.b_ratio.mid_fraction() - 1) < abs(r8.b_ratio.mid_fraction() - 1)


def test_b_quadrature_cross_check():
    """B from a validated integral against B = term(n)/A at n = 16."""
    n = 16
    via_term = b_factor(n, CTX)
    via_quad = b_factor_quadrature(n, CTX)
    assert (via_term - via_quad).contains_zero()


def test_csv_emission(tmp_path):
    rows = asymptotic_forms_check([8], CTX)
    seq_path = tmp_path / "seq.csv"
    emit_sequence_csv(rows, seq_path)
    text = seq_path.read_text().splitlines()
    assert text[0] == "n,term,a_ratio,b_ratio"
    assert text[1].startswith("8,")
    phase_path = tmp_path / "phase.csv"
    emit_phase_csv(EXAMPLE_PHASE, phase_path, PrecCtx.from_digits(20), samples=50)
    lines = phase_path.read_text().splitlines()
    assert lines[0] == "t,h"
    assert len(lines) > 40
