"""Bessel-Tricomi, two-variable Hermite, Laguerre(-1/2) and hybrid polynomials."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number

from .umbral_core import N_MAX, SeriesEvaluation, log_factorial, sum_series

LAGUERRE_ALPHA = Fraction(-1, 2)


def _tricomi_terms(n: int, x: float):
    term = math.exp(-log_factorial(n)) if n > 170 else 1.0 / math.factorial(n)
    k = 0
    while True:
        yield term
        term *= -x / ((n + k + 1) * (k + 1))
        k += 1


def tricomi_C(n: int, x: float, tol: float = 1e-12, max_terms: int = N_MAX) -> SeriesEvaluation:
    """Bessel-Tricomi function ``C_n(x) = sum_k (-x)^k / ((n+k)! k!)``.

    For ``x > 0`` this is ``x^(-n/2) J_n(2 sqrt(x))``. Summed by the term ratio.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    if not math.isfinite(x):
        raise ValueError("argument must be finite")
    return sum_series(_tricomi_terms(n, x), tol, max_terms)


def hermite_2var(n: int, x: Number, y: Number):
    """``H_n(x, y) = n! sum_{k <= n/2} x^(n-2k) y^k / ((n-2k)! k!)``.

    Generating function ``exp(x t + y t^2)``. Exact for int/Fraction inputs.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    exact = all(isinstance(v, (int, Fraction)) for v in (x, y))
    total = 0
    for k in range(n // 2 + 1):
        c = math.factorial(n) // (math.factorial(n - 2 * k) * math.factorial(k))
        total += c * x ** (n - 2 * k) * y**k
    return total if exact else total + 0.0


def laguerre_half(n: int, z):
    """Associated Laguerre polynomial ``L_n^(-1/2)(z)`` by the three-term recurrence.

    Normalized so that ``L_n^a(0) = binom(n + a, n)``.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a = LAGUERRE_ALPHA if isinstance(z, (int, Fraction)) else float(LAGUERRE_ALPHA)
    prev, cur = 1, 1 + a - z
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - z) * cur - (k + a) * prev) / (k + 1)
    return cur


def laguerre_half_coefficients(n: int) -> list[Fraction]:
    """Exact power-basis coefficients of ``L_n^(-1/2)`` from the explicit sum."""
    a = LAGUERRE_ALPHA
    out = []
    for j in range(n + 1):
        # binom(n + a, n - j) for rational a
        num = Fraction(1)
        for i in range(n - j):
            num *= (a + j + 1 + i)
        num /= math.factorial(n - j)
        out.append((-1) ** j * num / math.factorial(j))
    return out


def hybrid_LH_coefficients(m: int) -> dict[tuple[int, int], Fraction]:
    """Coefficients of ``_L H_m(xi, tau)`` keyed by ``(power of xi, power of tau)``.

    ``_L H_m(xi, tau) = m! sum_k tau^k xi^(m-2k) / ((k!)^2 (m-2k)!)``.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    return {
        (m - 2 * k, k): Fraction(math.factorial(m), math.factorial(k) ** 2 * math.factorial(m - 2 * k))
        for k in range(m // 2 + 1)
    }


def hybrid_LH(m: int, xi: Number, tau: Number):
    """Hybrid Laguerre-Hermite polynomial ``_L H_m(xi, tau)``; exact for int/Fraction inputs."""
    exact = all(isinstance(v, (int, Fraction)) for v in (xi, tau))
    total = sum(c * xi**i * tau**j for (i, j), c in hybrid_LH_coefficients(m).items())
    return total if exact else float(total)
