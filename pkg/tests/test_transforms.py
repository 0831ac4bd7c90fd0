import math

import numpy as np
import pytest

from umbra.evolution import RouteDisagreementError
from umbra.transforms import (
    QuadratureError,
    QuadratureSpec,
    gaussian_ft,
    gaussian_taylor,
    laplace_series_term,
    umbral_fourier,
    umbral_laplace,
)
from umbra.umbral_core import UmbralSequence

ONES = UmbralSequence.ones()
TRICOMI = UmbralSequence.tricomi()
ISF = UmbralSequence.inverse_shifted_factorial
G = gaussian_taylor()


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(order=1)
    with pytest.raises(ValueError):
        QuadratureSpec("adaptive_trapezoid", bounds=(1.0, -1.0))
    with pytest.raises(ValueError):
        QuadratureSpec("adaptive_trapezoid", bounds=(-math.inf, 1.0))
    with pytest.raises(ValueError):
        QuadratureSpec(tol=0)
    with pytest.raises(ValueError):
        QuadratureSpec("simpson")


@pytest.mark.parametrize("seq", [ONES, TRICOMI, ISF(2, 1)])
@pytest.mark.parametrize("nu", [0.5, 2.0])
def test_laplace_at_zero(seq, nu):
    r = umbral_laplace(seq, nu, 0.0)
    assert r.value == pytest.approx(1.0, abs=1e-14)
    assert r.routes["quadrature"] == pytest.approx(1.0, abs=1e-12)


def test_laplace_closed_case():
    r = umbral_laplace(ISF(1, 0), 1.0, 1.0)
    assert abs(r.value - math.exp(-1)) < 1e-10
    r = umbral_laplace(ISF(1, 0), 1.5, 0.5)
    assert abs(r.routes["series"] - r.routes["quadrature"]) < 1e-8


def test_laplace_ones_is_binomial_power():
    # c = 1 gives (1 + x)^(-nu) for x < 1 where the series converges
    r = umbral_laplace(ONES, 2.5, 0.4)
    assert r.value == pytest.approx(1.4 ** -2.5, rel=1e-12)


@pytest.mark.parametrize("mp", [(1, 0), (2, 0), (1, 1)])
@pytest.mark.parametrize("nu", [0.5, 1.0, 1.5, 3.0])
@pytest.mark.parametrize("x", np.linspace(0, 2, 9))
def test_laplace_route_agreement(mp, nu, x):
    r = umbral_laplace(ISF(*mp), nu, float(x))
    s, q = r.routes["series"], r.routes["quadrature"]
    assert r.converged
    assert abs(s - q) <= 1e-8 * max(abs(s), 1e-6)


def test_laplace_series_term_no_overflow():
    for nu in (0.5, 3.0, 40.0):
        for k in range(401):
            assert math.isfinite(laplace_series_term(ISF(1, 0), nu, 2.0, k))
            assert math.isfinite(laplace_series_term(TRICOMI, nu, 5.0, k))


def test_laplace_input_validation():
    with pytest.raises(ValueError):
        umbral_laplace(ONES, 0.0, 1.0)
    with pytest.raises(ValueError):
        umbral_laplace(ONES, 1.0, -1.0)
    with pytest.raises(ValueError):
        umbral_laplace(ONES, 1.0, 1.0, QuadratureSpec("adaptive_trapezoid"))


def test_gaussian_helpers():
    assert G[0] == 1 and G[1] == 0 and G[2] == -0.5
    assert sum(a * 1.3**n for n, a in enumerate(G)) == pytest.approx(math.exp(-0.845), rel=1e-14)
    assert gaussian_ft(0) == 1


@pytest.mark.parametrize("seq", [ONES, TRICOMI, ISF(2, 0)])
def test_fourier_at_zero(seq):
    r = umbral_fourier(G, gaussian_ft, seq, 0.0)
    assert r.value == 1
    assert abs(r.routes["quadrature"] - 1) < 1e-10


def test_fourier_tricomi_example():
    r = umbral_fourier(G, gaussian_ft, TRICOMI, 1.0)
    series = math.fsum((-1) ** j / (2**j * math.factorial(j) * math.factorial(2 * j)) for j in range(30))
    assert r.value == pytest.approx(series, abs=1e-15)
    assert r.value == pytest.approx(0.7551794626638965, abs=1e-14)
    assert abs(r.routes["quadrature"] - r.value) < 1e-6
    assert r.converged


@pytest.mark.parametrize("x", np.linspace(-2, 2, 17))
def test_fourier_identity_umbra(x):
    r = umbral_fourier(G, gaussian_ft, ONES, float(x))
    assert abs(r.value - math.exp(-x * x / 2)) < 1e-8
    assert abs(r.routes["quadrature"] - math.exp(-x * x / 2)) < 1e-8


def test_fourier_integrand_guard():
    # C_0(ikx) grows like exp(2 sqrt(|kx|/2)); an exponentially decaying
    # transform cannot hold it down at large x
    with pytest.raises(QuadratureError, match="exceeds"):
        umbral_fourier([1.0], lambda k: math.exp(-abs(k)), TRICOMI, 200.0)


def test_fourier_no_decay_rejected():
    with pytest.raises(QuadratureError):
        umbral_fourier(G, lambda k: 1.0, ONES, 1.0)


def test_fourier_route_disagreement_detected():
    # wrong transform (scaled) so the two routes cannot agree
    with pytest.raises(RouteDisagreementError):
        umbral_fourier(G, lambda k: 2 * gaussian_ft(k), ONES, 0.5)
