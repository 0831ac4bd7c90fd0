import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bessel_j_quadrature, pseudo_heat_bruteforce, tricomi_c0_quadrature
from umbra.special_functions import (
    hermite_2var,
    hybrid_LH,
    hybrid_LH_coefficients,
    laguerre_half,
    laguerre_half_coefficients,
    tricomi_C,
)


@pytest.mark.parametrize("n", range(6))
def test_tricomi_at_zero(n):
    assert tricomi_C(n, 0.0).value == pytest.approx(1 / math.factorial(n), rel=1e-15)


def test_tricomi_examples():
    assert tricomi_C(0, 1.0).value == pytest.approx(bessel_j_quadrature(0, 2.0), abs=1e-12)
    assert tricomi_C(1, 1.0).value == pytest.approx(bessel_j_quadrature(1, 2.0), abs=1e-12)
    assert tricomi_C(1, 1.0).value == pytest.approx(0.5767248078, abs=1e-10)


@pytest.mark.parametrize("lam", [0.0, 0.3, 1.0, 4.0, 9.5, 17.0, 25.0])
def test_tricomi_bessel_identity(lam):
    assert abs(tricomi_C(0, lam, 1e-14).value - tricomi_c0_quadrature(lam)) < 1e-10


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("x", [0.5, 2.0, 7.0])
def test_tricomi_order_n_bessel(n, x):
    # C_n(x) = x^(-n/2) J_n(2 sqrt x)
    expected = x ** (-n / 2) * bessel_j_quadrature(n, 2 * math.sqrt(x))
    assert tricomi_C(n, x, 1e-14).value == pytest.approx(expected, abs=1e-11)


@pytest.mark.parametrize("x", [0.2, 1.0, 3.0, 10.0])
def test_derivative_of_C0_is_minus_C1(x):
    h = 1e-5
    deriv = (tricomi_C(0, x + h, 1e-15).value - tricomi_C(0, x - h, 1e-15).value) / (2 * h)
    assert abs(deriv + tricomi_C(1, x, 1e-15).value) < 1e-6


def test_hermite_examples():
    assert hermite_2var(0, 3, 7) == 1
    assert hermite_2var(2, 5, 7) == 25 + 14
    assert hermite_2var(3, 2, 1) == 20
    assert hermite_2var(3, Fraction(1, 2), 3) == Fraction(1, 8) + 9


@settings(max_examples=50, deadline=None)
@given(t=st.floats(-0.5, 0.5), x=st.floats(-1, 1), y=st.floats(-1, 1))
def test_hermite_generating_function(t, x, y):
    total = sum(t**n / math.factorial(n) * hermite_2var(n, x, y) for n in range(41))
    assert abs(total - math.exp(x * t + y * t * t)) < 1e-10


def test_laguerre_examples():
    assert laguerre_half(0, 3.2) == 1
    assert laguerre_half(1, Fraction(1, 3)) == Fraction(1, 2) - Fraction(1, 3)
    assert laguerre_half(2, 0.5) == pytest.approx(-0.25, abs=1e-15)
    assert laguerre_half(2, Fraction(1, 2)) == Fraction(-1, 4)


@pytest.mark.parametrize("n", range(9))
def test_laguerre_recurrence_vs_explicit_sum(n):
    coeffs = laguerre_half_coefficients(n)
    for z in (0.0, 0.3, 1.7, 4.0):
        explicit = sum(float(c) * z**j for j, c in enumerate(coeffs))
        assert abs(laguerre_half(n, z) - explicit) < 1e-12
    # normalization L_n^a(0) = binom(n + a, n)
    assert laguerre_half(n, Fraction(0)) == coeffs[0]


def test_hybrid_examples():
    assert hybrid_LH(0, 3, 4) == 1
    assert hybrid_LH(2, Fraction(3), Fraction(5)) == 9 + 10
    assert hybrid_LH(3, 1, 1) == 7


@pytest.mark.parametrize("m", range(11))
def test_hybrid_matches_operator_series(m):
    poly, _ = pseudo_heat_bruteforce(m, sign=1)  # sum tau^n/(n!)^2 d^(2n) x^m
    got = {k: v for k, v in hybrid_LH_coefficients(m).items()}
    want = {mon: Fraction(int(c.p), int(c.q)) for mon, c in zip(poly.monoms(), poly.coeffs())}
    assert got == want
