import math
from fractions import Fraction

import pytest

from oracles import bessel_j_quadrature, tricomi_partial_sum
from umbra.operator_actions import (
    Polynomial,
    addition_decomposition,
    dilation_action,
    phi_n,
    projective_action,
    umbral_shift_poly,
)
from umbra.umbral_core import UmbralSequence, coefficient, eval_pseudo_exp, umbral_eval

ONES = UmbralSequence.ones()
TRICOMI = UmbralSequence.tricomi()
SEQS = [ONES, TRICOMI, UmbralSequence.inverse_shifted_factorial(2, 1), UmbralSequence.explicit([1.0, 0.5, -0.25, 2.0])]


def test_polynomial_normalizes_trailing_zeros():
    p = Polynomial([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Polynomial([0, 0]).is_zero()
    assert Polynomial([1, 1]) * Polynomial([1, -1]) == Polynomial([1, 0, -1])
    assert Polynomial([1, 2, 3]).derivative() == Polynomial([2, 6])


@pytest.mark.parametrize("seq", SEQS)
def test_shift_by_zero_is_identity(seq):
    g = Polynomial([3, -1, 4, 1, 5])
    assert umbral_shift_poly(seq, g, 0) == g


def test_shift_examples():
    assert umbral_shift_poly(TRICOMI, Polynomial([0, 0, 1]), 1) == Polynomial([Fraction(1, 2), -2, 1])
    assert umbral_shift_poly(ONES, Polynomial([0, 1]), 1) == Polynomial([1, 1])


def test_shift_float_path_matches_exact():
    g = Polynomial([1, 2, 3, 4])
    exact = umbral_shift_poly(TRICOMI, g, Fraction(1, 2))
    approx = umbral_shift_poly(TRICOMI, Polynomial([1.0, 2.0, 3.0, 4.0]), 0.5)
    for a, b in zip(exact.coeffs, approx.coeffs):
        assert float(a) == pytest.approx(b, rel=1e-14)


def test_shift_composition_semigroup_only_for_ones():
    g = Polynomial([1, -2, 0, 3, 1])
    l1, l2 = Fraction(1, 3), Fraction(2, 5)
    twice = umbral_shift_poly(ONES, umbral_shift_poly(ONES, g, l1), l2)
    assert twice == umbral_shift_poly(ONES, g, l1 + l2)
    # an umbral shift is not a semi-group once c^m c^n is evaluated termwise
    twice = umbral_shift_poly(TRICOMI, umbral_shift_poly(TRICOMI, g, l1), l2)
    assert twice != umbral_shift_poly(TRICOMI, g, l1 + l2)


def test_dilation_examples():
    assert dilation_action(TRICOMI, 0.0).value == 1.0
    assert dilation_action(TRICOMI, 1.0).value == pytest.approx(bessel_j_quadrature(0, 2.0), abs=1e-12)
    assert dilation_action(ONES, math.log(2)).value == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("seq", SEQS)
@pytest.mark.parametrize("lam", [-1.3, 0.0, 0.4, 2.5])
def test_dilation_is_pseudo_exp_bit_for_bit(seq, lam):
    assert dilation_action(seq, lam, 1e-12).value == eval_pseudo_exp(seq, lam, 1e-12).value


def test_projective_examples():
    assert projective_action(TRICOMI, 0.0, 0.7).value == 0.7
    assert projective_action(TRICOMI, 1.0, 0.5).value == pytest.approx(0.5 * math.exp(-0.5), abs=1e-13)
    assert projective_action(ONES, 0.5, 1.0, 1e-14).value == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("lx", [1.0, 1.5, -1.0])
def test_projective_divergence_reported(lx):
    r = projective_action(ONES, lx, 1.0)
    assert not r.converged
    assert "did not converge" in r.message


@pytest.mark.parametrize("seq", SEQS)
@pytest.mark.parametrize("lam, x", [(0.5, 0.8), (-0.3, 1.2), (0.9, 1.0)])
def test_projective_matches_umbral_eval_of_powers(seq, lam, x):
    r = projective_action(seq, lam, x, 1e-13)
    assert r.converged
    powers = [(lam * x) ** n for n in range(r.terms_used)]
    assert abs(r.value - x * umbral_eval(powers, seq)) <= max(r.tail_estimate, 1e-14)


def test_phi_examples():
    for seq in SEQS:
        for n in range(5):
            assert phi_n(seq, n, 0.0).value == pytest.approx(coefficient(seq, n).value, rel=1e-15)
    assert phi_n(TRICOMI, 0, 1.0).value == pytest.approx(0.2238907791412357, abs=1e-12)
    assert phi_n(TRICOMI, 1, 1.0).value == pytest.approx(-tricomi_partial_sum(1.0, n=1), abs=1e-13)
    assert phi_n(TRICOMI, 1, 1.0).value == pytest.approx(-0.5767248078, abs=1e-10)


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("x", [0.3, 1.0, 4.0])
def test_phi_is_signed_tricomi(n, x):
    assert phi_n(TRICOMI, n, x, 1e-14).value == pytest.approx((-1) ** n * tricomi_partial_sum(x, n=n), abs=1e-13)


def test_addition_examples():
    for seq in (ONES, TRICOMI):
        assert addition_decomposition(seq, 0.8, 0.0, 10).value == eval_pseudo_exp(seq, 0.8).value
    r = addition_decomposition(TRICOMI, 1.0, 1.0, 40, 1e-14)
    assert r.converged
    assert r.value == pytest.approx(tricomi_partial_sum(2.0), abs=1e-12)
    assert r.value == pytest.approx(-0.19655, abs=1e-5)
    assert addition_decomposition(ONES, 0.3, 0.4, 40).value == pytest.approx(math.exp(0.7), abs=1e-12)


def test_addition_matches_tricomi_expansion():
    # f(x+y) = sum_n (-y)^n / n! C_n(x) for tricomi
    x, y = 0.5, 0.75
    direct = sum((-y) ** n / math.factorial(n) * tricomi_partial_sum(x, n=n) for n in range(40))
    assert addition_decomposition(TRICOMI, x, y, 60, 1e-14).value == pytest.approx(direct, abs=1e-13)


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("y", [0.25, 0.5, 1.0])
def test_addition_identity(x, y):
    lhs = addition_decomposition(TRICOMI, x, y, 60, 1e-14).value
    assert abs(lhs - eval_pseudo_exp(TRICOMI, x + y, 1e-14).value) < 1e-10
