"""The golden instance: OEIS A214615 and its Meixner-polynomial family.

M_0 = 1, M_1 = x, M_{n+1} = x M_n - n^2 M_{n-1}; the sequence is
a(n) = M_n(1).  Its exponential generating function, and more generally the
EGF of n -> M_n(x0), is

    F(t) = exp(x0 * arctan t) / sqrt(1 + t^2),

annihilated by the first-order operator (1 + t^2) D - (x0 - t).  Everything
here is assembled from the exact series/operator primitives, so the three
routes to the terms (polynomial evaluation, EGF extraction, recurrence
unrolling) stay independent and cross-checkable.
"""

from __future__ import annotations

from fractions import Fraction

from .operators import DifferentialOperator, RecurrenceOperator
from .polynomials import Polynomial, RationalLike, X
from .sequences import SequenceTable
from .series import Series

A214615_ID = "A214615"


def meixner_eval(n: int, x: RationalLike) -> Fraction:
    """M_n(x) by running the three-term recurrence forward."""
    if n < 0:
        raise ValueError("polynomial index must be >= 0")
    prev, cur = Fraction(1), Fraction(x)
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, Fraction(x) * cur - k * k * prev
    return cur


def a214615_terms(n_max: int) -> SequenceTable:
    """a(0..n_max) for a(n) = M_n(1), via a(n+1) = a(n) - n^2 a(n-1)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    terms = [1, 1]
    for n in range(1, n_max):
        terms.append(terms[n] - n * n * terms[n - 1])
    return SequenceTable(0, tuple(terms[: n_max + 1]))


def build_egf(x0: RationalLike, order: int) -> Series:
    """exp(x0 * arctan t) / sqrt(1 + t^2), truncated at ``order``."""
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    if order == 0:
        return Series.one(0)
    one_plus_t2 = Polynomial((Fraction(1), Fraction(0), Fraction(1)))
    arctan = (
        Series.one(order - 1) / Series.from_polynomial(one_plus_t2, order - 1)
    ).integral()
    exp_part = (arctan * Fraction(x0)).exp()
    sqrt_part = Series.from_polynomial(one_plus_t2, order).inverse_sqrt()
    return exp_part * sqrt_part


def egf_annihilator(x0: RationalLike) -> DifferentialOperator:
    """(1 + t^2) D - (x0 - t), which sends build_egf(x0, N) to zero."""
    q0 = X - Polynomial.constant(x0)
    q1 = Polynomial((Fraction(1), Fraction(0), Fraction(1)))
    return DifferentialOperator((q0, q1))


#: a(n) - a(n-1) + (n-1)^2 a(n-2) = 0 for n >= 2.
A214615_RECURRENCE = RecurrenceOperator.from_coefficients(
    (
        Polynomial.constant(1),
        Polynomial.constant(-1),
        (X - Polynomial.constant(1)) ** 2,
    ),
    n_min=2,
)

#: a(0) = a(1) = 1, enough to unroll the order-2 recurrence.
A214615_INITIAL = SequenceTable(0, (1, 1))
