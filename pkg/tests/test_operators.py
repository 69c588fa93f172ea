import random
from fractions import Fraction

import pytest

from holoseq.operators import (
    DifferentialOperator,
    NonIntegerTermError,
    RecurrenceOperator,
    SingularRecurrenceError,
    egf_shift_weight,
)
from holoseq.polynomials import Polynomial, X
from holoseq.sequences import SequenceTable
from holoseq.series import Series
from holoseq.meixner import (
    A214615_INITIAL,
    A214615_RECURRENCE,
    a214615_terms,
    build_egf,
    egf_annihilator,
)

import oracles

ONE = Polynomial.constant(1)


def rand_table(rng, length):
    return [rng.randint(-9, 9) for _ in range(length)]


# --- shift/weight rule -------------------------------------------------


def test_shift_weight_trivial_cases():
    assert egf_shift_weight(0, 1) == (1, ONE)
    assert egf_shift_weight(2, 1) == (-1, X * (X - ONE))
    assert egf_shift_weight(1, 0) == (-1, X)
    assert egf_shift_weight(0, 0) == (0, ONE)


def test_shift_weight_rejects_negative_exponents():
    with pytest.raises(ValueError):
        egf_shift_weight(-1, 0)
    with pytest.raises(ValueError):
        egf_shift_weight(0, -1)


def test_shift_weight_matches_series_extraction_exhaustively():
    # n! [t^n] t^a F^(b) == fall(n, a) * a(n - a + b), checked for every
    # monomial with a <= 3, b <= 2 against literal differentiate-and-shift
    rng = random.Random(2024)
    for a_pow in range(4):
        for d_order in range(3):
            for _ in range(3):
                table = rand_table(rng, 12)
                shift, weight = egf_shift_weight(a_pow, d_order)
                assert shift == d_order - a_pow
                top = len(table) - d_order + a_pow
                for n in range(top):
                    lhs = oracles.egf_extraction_by_series(table, a_pow, d_order, n)
                    m = n + shift
                    rhs = weight(n) * (table[m] if 0 <= m < len(table) else 0)
                    assert lhs == rhs, (a_pow, d_order, n)


def test_monomial_recurrences_have_order_zero_degree_a():
    for a_pow in range(4):
        for d_order in range(3):
            op_coeffs = [Polynomial()] * d_order + [
                Polynomial((Fraction(0),) * a_pow + (Fraction(1),))
            ]
            rec = DifferentialOperator(tuple(op_coeffs)).to_recurrence()
            assert rec.order == 0
            assert rec.degree == a_pow


# --- ode_to_recurrence -------------------------------------------------


def test_extraction_golden_case():
    rec = egf_annihilator(1).to_recurrence()
    assert rec == A214615_RECURRENCE
    assert rec.n_min == 2
    assert rec.coeffs == (ONE, -ONE, (X - ONE) ** 2)


def test_extraction_first_order_exponential():
    d_minus_1 = DifferentialOperator((Polynomial.constant(-1), ONE))
    rec = d_minus_1.to_recurrence()
    assert rec.to_text() == "a(n) - a(n-1) = 0 for n >= 1"
    assert rec.order_degree() == (1, 0)


def test_extraction_x0_3_cross_checked_by_unroll():
    rec = egf_annihilator(3).to_recurrence()
    assert rec.to_text() == "a(n) - 3*a(n-1) + (n-1)^2*a(n-2) = 0 for n >= 2"
    egf = build_egf(3, 30)
    unrolled = rec.unroll(SequenceTable(0, (1, 3)), 30)
    assert egf.egf_terms() == unrolled


def test_extraction_is_additive_in_the_operator():
    lhs = egf_annihilator(1)
    rhs = DifferentialOperator((X ** 2, X))
    merged = (lhs + rhs).to_recurrence()
    # recompute by collecting both operators' monomials in one weight table
    weights: dict[int, Polynomial] = {}
    for op in (lhs, rhs):
        for j, q in enumerate(op.coeffs):
            for a_pow, c in enumerate(q.coeffs):
                if c == 0:
                    continue
                s, w = egf_shift_weight(a_pow, j)
                weights[s] = weights.get(s, Polynomial()) + w * c
    assert merged == RecurrenceOperator.from_shift_weights(weights)


def test_power_band_family_order_equals_degree():
    # (1 + t^d) D - q0 with deg q0 < d gives a recurrence of order exactly d
    rng = random.Random(5)
    for d in (1, 2, 3):
        for _ in range(4):
            q0 = Polynomial(tuple(Fraction(rng.randint(-4, 4)) for _ in range(d)))
            lead = Polynomial((Fraction(1),) + (Fraction(0),) * (d - 1) + (Fraction(1),))
            operator = DifferentialOperator((-q0, lead))
            rec = operator.to_recurrence()
            assert rec.order == d
            assert rec.degree == d


# --- apply -------------------------------------------------------------


def test_apply_d_to_polynomial_series():
    d = DifferentialOperator((Polynomial(), ONE))
    f = Series.from_polynomial(Polynomial((1, 1)), 3)
    assert d.apply(f) == Series.one(2)


def test_apply_requires_enough_order():
    with pytest.raises(ValueError):
        egf_annihilator(1).apply(Series.one(0))


def test_annihilator_kills_its_egf():
    for x0 in (0, 1, 2, -1, Fraction(1, 2)):
        egf = build_egf(x0, 25)
        assert egf_annihilator(x0).apply(egf).is_zero


def test_wrong_annihilator_leaves_residual():
    egf = build_egf(1, 20)
    assert not egf_annihilator(2).apply(egf).is_zero


# --- construction and normalization ------------------------------------


def test_normalization_clears_denominators_content_and_sign():
    scaled = RecurrenceOperator(
        tuple(p * Fraction(-3, 2) for p in A214615_RECURRENCE.coeffs), 2
    )
    assert scaled == A214615_RECURRENCE
    doubled = RecurrenceOperator(
        tuple(p * 4 for p in A214615_RECURRENCE.coeffs), 2
    )
    assert doubled == A214615_RECURRENCE


def test_equality_includes_n_min():
    assert A214615_RECURRENCE.with_n_min(1) != A214615_RECURRENCE
    assert A214615_RECURRENCE.with_n_min(1).coeffs == A214615_RECURRENCE.coeffs


def test_zero_leading_coefficient_rejected():
    with pytest.raises(ValueError):
        RecurrenceOperator((Polynomial(), ONE), 1)
    with pytest.raises(ValueError):
        RecurrenceOperator((), 0)


def test_trailing_zero_polynomials_trimmed():
    rec = RecurrenceOperator((ONE, -ONE, Polynomial()), 1)
    assert rec.order == 1


def test_order_degree_examples():
    assert A214615_RECURRENCE.order_degree() == (2, 2)
    constant = RecurrenceOperator((ONE, -ONE), 1)
    assert constant.order_degree() == (1, 0)


# --- unroll ------------------------------------------------------------


def test_unroll_golden_terms():
    table = A214615_RECURRENCE.unroll(A214615_INITIAL, 11)
    assert table.terms == (1, 1, 0, -4, -4, 60, 160, -2000, -9840, 118160, 915200, -10900800)


def test_unroll_prefix_when_target_inside_initial():
    table = A214615_RECURRENCE.unroll(A214615_INITIAL, 1)
    assert table == A214615_INITIAL
    assert A214615_RECURRENCE.unroll(A214615_INITIAL, 0) == SequenceTable(0, (1,))


def test_unroll_needs_initial_up_to_n_min():
    with pytest.raises(ValueError):
        A214615_RECURRENCE.unroll(SequenceTable(0, (1,)), 5)


def test_unroll_with_low_n_min_uses_zero_convention():
    relaxed = A214615_RECURRENCE.with_n_min(1)
    table = relaxed.unroll(SequenceTable(0, (1,)), 11)
    assert table == a214615_terms(11)


def test_unroll_constant_sequence():
    rec = RecurrenceOperator((ONE, -ONE), 1)
    assert rec.unroll(SequenceTable(0, (7,)), 5).terms == (7,) * 6


def test_unroll_singular_point():
    # (n-5)*a(n) - (n-5)*a(n-1) = 0: every step gives a(n) = a(n-1)
    # exactly, until p_0(n) = n - 5 vanishes at n = 5.
    p = X - Polynomial.constant(5)
    rec = RecurrenceOperator((p, -p), 1)
    with pytest.raises(SingularRecurrenceError) as info:
        rec.unroll(SequenceTable(0, (1,)), 10)
    assert info.value.n == 5


def test_unroll_non_integer_term():
    rec = RecurrenceOperator((Polynomial.constant(2), -ONE), 1)
    with pytest.raises(NonIntegerTermError) as info:
        rec.unroll(SequenceTable(0, (1,)), 3)
    assert info.value.n == 1
    assert info.value.value == Fraction(1, 2)


def test_unroll_bad_target():
    with pytest.raises(ValueError):
        A214615_RECURRENCE.unroll(A214615_INITIAL, -1)


# --- verify ------------------------------------------------------------


def test_verify_golden_range():
    report = A214615_RECURRENCE.verify(a214615_terms(11))
    assert report.passed
    assert (report.n_first_checked, report.n_last_checked) == (2, 11)
    assert report.first_failure is None


def test_verify_detects_single_corruption():
    table = a214615_terms(11)
    bad = table.replaced(7, table.term(7) + 1)
    report = A214615_RECURRENCE.verify(bad)
    assert not report.passed
    assert report.first_failure is not None
    assert report.first_failure[0] == 7
    assert report.n_last_checked == 7


def test_verify_zero_convention_below_offset():
    # same coefficients, stated from n >= 1: needs a(-1) * (n-1)^2 |_{n=1} = 0
    relaxed = A214615_RECURRENCE.with_n_min(1)
    report = relaxed.verify(a214615_terms(11))
    assert report.passed
    assert report.n_first_checked == 1


def test_verify_powers_of_two():
    rec = RecurrenceOperator((ONE, Polynomial.constant(-2)), 1)
    table = SequenceTable(0, tuple(2 ** n for n in range(12)))
    assert rec.verify(table).passed
    assert not rec.verify(table.replaced(5, 33)).passed


def test_verify_starts_at_offset_for_shifted_tables():
    rec = RecurrenceOperator((ONE, -ONE), 1)
    table = SequenceTable(4, (3, 3, 3))
    report = rec.verify(table)
    # a(3) is below the table, counted as zero, so n = 4 FAILS: a(4) - 0 != 0
    assert not report.passed
    assert report.first_failure == (4, 3)


def test_verify_table_entirely_below_n_min():
    with pytest.raises(ValueError):
        A214615_RECURRENCE.verify(SequenceTable(0, (1, 1)))


def test_unroll_then_verify_round_trip_random():
    rng = random.Random(424242)
    for _ in range(20):
        order = rng.randint(1, 3)
        degree = rng.randint(0, 2)
        coeffs = [ONE]
        for _ in range(order):
            coeffs.append(
                Polynomial(tuple(Fraction(rng.randint(-3, 3)) for _ in range(degree + 1)))
            )
        rec = RecurrenceOperator.from_coefficients(tuple(coeffs))
        if rec.order == 0:
            continue
        initial = SequenceTable(0, tuple(rng.randint(-5, 5) for _ in range(rec.order)))
        table = rec.unroll(initial, 20)
        assert rec.verify(table).passed


# --- extraction/verification consistency --------------------------------


def test_extracted_recurrence_holds_whenever_operator_annihilates():
    cases = [
        (egf_annihilator(0), build_egf(0, 24)),
        (egf_annihilator(1), build_egf(1, 24)),
        (egf_annihilator(2), build_egf(2, 24)),
        (egf_annihilator(-1), build_egf(-1, 24)),
    ]
    for operator, egf in cases:
        assert operator.apply(egf).is_zero
        report = operator.to_recurrence().verify(egf.egf_terms())
        assert report.passed


def test_mismatched_operator_fails_both_ways():
    operator = egf_annihilator(2)
    egf = build_egf(1, 24)
    assert not operator.apply(egf).is_zero
    assert not operator.to_recurrence().verify(egf.egf_terms()).passed


# --- text --------------------------------------------------------------


def test_operator_text_golden():
    assert egf_annihilator(1).to_text() == "(1+t^2)*D - (1-t)"
    assert A214615_RECURRENCE.to_text() == "a(n) - a(n-1) + (n-1)^2*a(n-2) = 0 for n >= 2"


def test_operator_text_variants():
    assert DifferentialOperator((Polynomial.constant(-1), ONE)).to_text() == "D - 1"
    assert DifferentialOperator((Polynomial(), X)).to_text() == "t*D"
    second = DifferentialOperator((ONE, Polynomial(), Polynomial((0, 0, 1))))
    assert second.to_text() == "t^2*D^2 + 1"
    eq10 = A214615_RECURRENCE.with_n_min(1)
    assert eq10.to_text() == "a(n) - a(n-1) + (n-1)^2*a(n-2) = 0 for n >= 1"


def test_zero_differential_operator_rejected():
    with pytest.raises(ValueError):
        DifferentialOperator((Polynomial(),))
