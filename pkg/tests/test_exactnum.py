import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from metacover.errors import NotDivisible
from metacover.exactnum import (
    Cyclotomic,
    cyclotomic_polynomial,
    lift_to_order,
    mat_identity,
    mat_mul,
    mat_pow,
    multiplicative_order,
    root_of_unity,
)

zeta = root_of_unity


@pytest.mark.parametrize("n, coeffs", [(1, (-1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1))])
def test_cyclotomic_polynomial_small(n, coeffs):
    assert cyclotomic_polynomial(n) == coeffs


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert cyclotomic_polynomial(n) == tuple(int(c) for c in expected)


def test_root_values():
    assert zeta(5, 0) == 1
    assert zeta(3, 1) + zeta(3, 2) == -1
    assert zeta(8, 2) == lift_to_order(zeta(4, 1), 8)
    assert zeta(5, 1).inv() == zeta(5, 4)
    assert zeta(8, 1).conj() == zeta(8, 7)
    assert (1 + zeta(3, 1)) * (1 + zeta(3, 2)) == 1


def test_lift():
    assert lift_to_order(Cyclotomic.one(2), 6) == 1
    assert lift_to_order(zeta(2, 1), 4) == zeta(4, 2)
    assert lift_to_order(zeta(3, 1) + zeta(3, 2), 12) == -1
    with pytest.raises(NotDivisible):
        lift_to_order(zeta(4, 1), 6)


def test_multiplicative_order():
    assert multiplicative_order(Cyclotomic.one(1)) == 1
    assert multiplicative_order(zeta(6, 1)) == 6
    assert multiplicative_order(-zeta(3, 1)) == 6
    assert multiplicative_order(Cyclotomic.from_rational(3, 2)) is None
    assert multiplicative_order(1 + zeta(5, 1)) is None


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        zeta(3, 1) + zeta(4, 1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.zero(5).inv()


def test_str_forms():
    assert str(Cyclotomic.from_rational(6, Fraction(1, 2)) - 3 * zeta(6, 1)) == "1/2 - 3*zeta(6)"
    assert str(zeta(5, 3) * Fraction(-2, 3)) == "-2/3*zeta(5)^3"
    assert str(Cyclotomic.zero(7)) == "0"


def test_root_counts_agree_with_sum():
    counts = [2, 0, 1, 0, 0, 3]
    total = sum((c * zeta(6, e) for e, c in enumerate(counts)), Cyclotomic.zero(6))
    assert Cyclotomic.from_root_counts(6, counts) == total


def test_matrix_power_of_permutation():
    one, zero = zeta(3, 0), Cyclotomic.zero(3)
    swap = ((zero, one), (one, zero))
    assert mat_pow(swap, 2) == mat_identity(2, 3)
    assert mat_mul(swap, mat_identity(2, 3)) == swap


# -- properties -----------------------------------------------------------------

orders = st.integers(min_value=1, max_value=30)


@st.composite
def elements(draw, order=None):
    n = order if order is not None else draw(orders)
    size = draw(st.integers(min_value=0, max_value=n))
    coeffs = draw(
        st.lists(
            st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=size, max_size=size
        )
    )
    return Cyclotomic(n, coeffs)


@st.composite
def pairs(draw):
    n = draw(orders)
    return draw(elements(n)), draw(elements(n)), draw(elements(n))


def _close(x: Cyclotomic, value: complex) -> bool:
    return abs(x.approx() - value) < 1e-7 * (1 + abs(value))


@settings(max_examples=150, deadline=None)
@given(pairs())
def test_ring_axioms(triple):
    a, b, c = triple
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=150, deadline=None)
@given(pairs())
def test_arithmetic_matches_complex_numbers(triple):
    a, b, _ = triple
    assert _close(a + b, a.approx() + b.approx())
    assert _close(a * b, a.approx() * b.approx())
    assert _close(a.conj(), a.approx().conjugate())


@settings(max_examples=100, deadline=None)
@given(elements())
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inv() == 1


@settings(max_examples=100, deadline=None)
@given(elements(), st.integers(min_value=1, max_value=4))
def test_lift_is_a_homomorphism(a, factor):
    b = a * a + 1
    m = a.order * factor
    assert lift_to_order(a * b, m) == lift_to_order(a, m) * lift_to_order(b, m)
    assert _close(lift_to_order(a, m), a.approx())


@given(orders, st.integers(min_value=-100, max_value=100))
def test_root_of_unity_numerics(n, k):
    assert _close(zeta(n, k), cmath.exp(2j * cmath.pi * k / n))
    assert multiplicative_order(zeta(n, k)) == n // math.gcd(k, n)
