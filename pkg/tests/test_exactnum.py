"""Rational parsing, exact linear algebra, and the polynomial sign engine."""

from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab.exactnum import (
    ExactInputError,
    decimal_string,
    format_rational,
    matrix_det,
    parse_rational,
    poly_eval,
    poly_mul,
    poly_nonneg_on_interval,
    psd2_radical_cross,
    psd_check,
    sturm_chain,
    sturm_count_halfopen,
)

HILBERT3 = [
    [Fraction(1), Fraction(1, 2), Fraction(1, 3)],
    [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)],
    [Fraction(1, 3), Fraction(1, 4), Fraction(1, 5)],
]


def test_parse_rational_accepts_sums_and_signs():
    assert parse_rational("1/2") == Fraction(1, 2)
    assert parse_rational("5") == 5
    assert parse_rational("1/6+1/100") == Fraction(53, 300)
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(" 2/3 ") == Fraction(2, 3)


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1//2", "1/2+", "+"])
def test_parse_rational_rejects_garbage(bad):
    with pytest.raises(ExactInputError):
        parse_rational(bad)


def test_format_round_trips():
    for q in [Fraction(0), Fraction(7, 3240), Fraction(-9, 4096), Fraction(5)]:
        assert parse_rational(format_rational(q)) == q


def test_decimal_string_known_renderings():
    assert decimal_string(Fraction(8, 9), 12) == "0.888888888889"
    assert decimal_string(Fraction(1, 2), 12) == "0.5"
    assert decimal_string(Fraction(0), 12) == "0"
    assert decimal_string(Fraction(-1, 3), 6) == "-0.333333"


def test_decimal_string_rounds_half_even():
    # 1/8 at two significant digits sits exactly on a tie
    assert decimal_string(Fraction(1, 8), 2) == "0.12"
    assert decimal_string(Fraction(3, 8), 2) == "0.38"


def test_matrix_det_hilbert():
    assert matrix_det([row[:] for row in HILBERT3]) == Fraction(1, 2160)


def test_matrix_det_singular():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert matrix_det(rows) == 0


def test_psd_accepts_hilbert_and_rejects_indefinite():
    assert psd_check(HILBERT3)
    assert not psd_check([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])


def test_psd_semidefinite_boundary():
    rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert psd_check(rows)


def test_psd_needs_symmetry_and_small_order():
    with pytest.raises(ExactInputError):
        psd_check([[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]])
    big = [[Fraction(int(i == j)) for j in range(9)] for i in range(9)]
    with pytest.raises(ExactInputError):
        psd_check(big)


def test_psd2_radical_cross_pinned_cases():
    assert psd2_radical_cross(Fraction(1, 3), Fraction(1, 3), Fraction(1, 6), Fraction(1, 6))
    assert not psd2_radical_cross(Fraction(1, 3), Fraction(0), Fraction(1, 6), Fraction(1, 24))


def test_psd2_radical_cross_rejects_negative_products():
    with pytest.raises(ExactInputError):
        psd2_radical_cross(Fraction(1), Fraction(1), Fraction(-1), Fraction(1))


def _oracle_psd2(a1, a2, p, q) -> tuple[bool, Decimal]:
    """50-digit floating evaluation of a1*a2 - (sqrt(p) - sqrt(q))**2."""
    getcontext().prec = 50
    da1, da2 = Decimal(a1.numerator) / a1.denominator, Decimal(a2.numerator) / a2.denominator
    dp = Decimal(p.numerator) / p.denominator
    dq = Decimal(q.numerator) / q.denominator
    margin = da1 * da2 - (dp.sqrt() - dq.sqrt()) ** 2
    return (da1 >= 0 and da2 >= 0 and margin >= 0), margin


def test_psd2_agrees_with_high_precision_oracle():
    import random

    rng = random.Random(20260822)
    checked = 0
    for _ in range(1000):
        a1 = Fraction(rng.randrange(0, 300), rng.randrange(1, 100))
        a2 = Fraction(rng.randrange(0, 300), rng.randrange(1, 100))
        p = Fraction(rng.randrange(0, 200), rng.randrange(1, 100))
        q = Fraction(rng.randrange(0, 200), rng.randrange(1, 100))
        exact = psd2_radical_cross(a1, a2, p, q)
        approx, margin = _oracle_psd2(a1, a2, p, q)
        if abs(margin) > Decimal("1e-30"):
            assert exact == approx, (a1, a2, p, q)
            checked += 1
    assert checked > 900  # the tolerance band should be rare


@given(
    a1=st.fractions(min_value=0, max_value=4),
    root=st.fractions(min_value=-2, max_value=2),
)
def test_psd2_square_cross_terms_reduce_to_product_sign(a1, root):
    # with q = 0 the cross term is exactly p, no radicals involved
    p = root**2
    assert psd2_radical_cross(a1, a1, p, Fraction(0)) == (a1 * a1 >= p)


def test_poly_eval_matches_horner_expansion():
    p = [Fraction(2), Fraction(-3), Fraction(1)]  # 2 - 3x + x^2
    assert poly_eval(p, Fraction(0)) == 2
    assert poly_eval(p, Fraction(1)) == 0
    assert poly_eval(p, Fraction(2)) == 0
    assert poly_eval(p, Fraction(3)) == 2


def test_sturm_counts_roots_half_open():
    # x^2 - 2 has one root in (0, 2]
    p = [Fraction(-2), Fraction(0), Fraction(1)]
    chain = sturm_chain(p)
    assert sturm_count_halfopen(chain, Fraction(0), Fraction(2)) == 1
    assert sturm_count_halfopen(chain, Fraction(2), Fraction(3)) == 0
    # (x^2-2)(x^2-3) has both its positive roots in (1, 2]
    p2 = poly_mul(p, [Fraction(-3), Fraction(0), Fraction(1)])
    assert sturm_count_halfopen(sturm_chain(p2), Fraction(1), Fraction(2)) == 2


def test_poly_nonneg_basic_verdicts():
    x_minus_half = [Fraction(-1, 2), Fraction(1)]
    assert not poly_nonneg_on_interval(x_minus_half, Fraction(0), Fraction(1))
    assert poly_nonneg_on_interval(x_minus_half, Fraction(1, 2), Fraction(1))
    bump = [Fraction(0), Fraction(1), Fraction(-1)]  # x(1-x)
    assert poly_nonneg_on_interval(bump, Fraction(0), Fraction(1))
    assert not poly_nonneg_on_interval(bump, Fraction(2), Fraction(3))


def test_poly_nonneg_handles_irrational_double_roots():
    # (x^2-2)^2 touches zero at sqrt(2) but never goes below
    p = poly_mul([Fraction(-2), Fraction(0), Fraction(1)], [Fraction(-2), Fraction(0), Fraction(1)])
    assert poly_nonneg_on_interval(p, Fraction(0), Fraction(2))
    assert not poly_nonneg_on_interval([-c for c in p], Fraction(0), Fraction(2))


def test_poly_nonneg_root_at_endpoint():
    # (x-1)(x-2) vanishes at the right endpoint of [0,1] and dips inside [0,3]
    p = [Fraction(2), Fraction(-3), Fraction(1)]
    assert poly_nonneg_on_interval(p, Fraction(0), Fraction(1))
    assert not poly_nonneg_on_interval(p, Fraction(0), Fraction(3))
    assert poly_nonneg_on_interval(p, Fraction(2), Fraction(5, 2))


def test_poly_nonneg_zero_and_constants():
    assert poly_nonneg_on_interval([], Fraction(0), Fraction(1))
    assert poly_nonneg_on_interval([Fraction(0)], Fraction(0), Fraction(1))
    assert not poly_nonneg_on_interval([Fraction(-1, 7)], Fraction(0), Fraction(1))


@given(
    coeffs=st.lists(st.fractions(min_value=-3, max_value=3), min_size=1, max_size=4),
    lo=st.fractions(min_value=0, max_value=1),
    width=st.fractions(min_value=Fraction(1, 64), max_value=2),
)
@settings(max_examples=150)
def test_poly_squares_are_nonnegative(coeffs, lo, width):
    assert poly_nonneg_on_interval(poly_mul(coeffs, coeffs), lo, lo + width)


@given(st.lists(st.fractions(min_value=-2, max_value=2), min_size=3, max_size=3))
def test_psd_check_matches_eigenvalue_oracle_on_diagonal_plus_rank_one(v):
    # v v^T is PSD; v v^T - small*I is not once any |v_i| is small enough
    rows = [[v[i] * v[j] for j in range(3)] for i in range(3)]
    assert psd_check(rows)


def test_psd_check_against_numpy_eigenvalues():
    import random

    import numpy as np

    rng = random.Random(7)
    for _ in range(1000):
        sym = [[Fraction(rng.randrange(-8, 9), rng.randrange(1, 5)) for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(i):
                sym[i][j] = sym[j][i]
        eigs = np.linalg.eigvalsh(np.array([[float(x) for x in row] for row in sym]))
        if abs(min(eigs)) < 1e-9:
            continue  # too close to the boundary for the float oracle to vote
        assert psd_check(sym) == (min(eigs) > 0), sym
