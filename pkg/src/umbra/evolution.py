"""Operational solutions of evolution problems.

* Umbral Glaisher evolution ``exp(delta c d^2/dx^2) exp(-x^2)`` by two routes.
* The pseudo-heat equation ``d/dt t d/dt F = -d^2F/dx^2`` for polynomial data,
  solved exactly with rational coefficients, plus its residual checker.
* The Laguerre derivative ``-d/dxi xi d/dxi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .operator_actions import Polynomial
from .special_functions import hybrid_LH_coefficients
from .umbral_core import N_MAX, SeriesEvaluation, UmbralSequence, coefficient, log_factorial, sum_series

ROUTE_FACTOR = 10.0


class RouteDisagreementError(ArithmeticError):
    """Two independent evaluation routes disagree beyond the allowed tolerance."""


@dataclass(frozen=True)
class BivariatePolynomial:
    """Exact polynomial in ``x`` and ``t``; ``terms`` maps ``(x power, t power)`` to a Fraction."""

    terms: Mapping[tuple[int, int], Fraction]

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = Fraction(c)
            if c:
                clean[(i, j)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePolynomial(out)

    def __call__(self, x, t):
        return sum(c * x**i * t**j for (i, j), c in self.terms.items())

    def at_t0(self) -> Polynomial:
        deg = max((i for i, j in self.terms if j == 0), default=-1)
        cs = [Fraction(0)] * (deg + 1)
        for (i, j), c in self.terms.items():
            if j == 0:
                cs[i] = c
        return Polynomial(cs)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{i}*t^{j}" for (i, j), c in self.terms.items())


def pseudo_heat_solve(g: Polynomial) -> BivariatePolynomial:
    """Solve ``d/dt t d/dt F = -d^2F/dx^2`` with ``F(x, 0) = g(x)``.

    ``F = C_0(t d^2/dx^2) g = sum_n (-t)^n / (n!)^2 * d^(2n)g/dx^(2n)``; the sum
    terminates for polynomial ``g``. For ``g = x^m`` this is ``_L H_m(x, -t)``.
    """
    if not g.is_exact:
        raise ValueError("pseudo_heat_solve needs exact (int/Fraction) coefficients")
    out: dict[tuple[int, int], Fraction] = {}
    d = g
    n = 0
    while not d.is_zero():
        w = Fraction((-1) ** n, math.factorial(n) ** 2)
        for i, c in enumerate(d.coeffs):
            if c:
                out[(i, n)] = out.get((i, n), 0) + w * c
        d = d.derivative(2)
        n += 1
    return BivariatePolynomial(out)


def hybrid_bivariate(m: int) -> BivariatePolynomial:
    """``_L H_m(x, -t)`` as a polynomial in ``(x, t)``."""
    return BivariatePolynomial({(i, j): c * (-1) ** j for (i, j), c in hybrid_LH_coefficients(m).items()})


def pde_residual(F: BivariatePolynomial) -> BivariatePolynomial:
    """``d/dt(t dF/dt) + d^2F/dx^2``; the zero polynomial iff ``F`` solves the pseudo-heat equation."""
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in F.terms.items():
        if j >= 1:
            out[(i, j - 1)] = out.get((i, j - 1), 0) + j * j * c
        if i >= 2:
            out[(i - 2, j)] = out.get((i - 2, j), 0) + i * (i - 1) * c
    return BivariatePolynomial(out)


def laguerre_derivative(p: Polynomial) -> Polynomial:
    """``-d/dxi (xi dp/dxi)``: maps ``xi^k`` to ``-k^2 xi^(k-1)``."""
    return Polynomial([-(k * k) * c for k, c in enumerate(p.coeffs)][1:], p.label)


def tricomi_truncation(lam, degree: int) -> Polynomial:
    """Degree-``degree`` truncation of ``C_0(lam xi) = sum_k (-lam xi)^k / (k!)^2``."""
    lam = Fraction(lam)
    return Polynomial([(-lam) ** k / math.factorial(k) ** 2 for k in range(degree + 1)], "xi")


def _glaisher_derivative_terms(seq: UmbralSequence, delta: float, x: float):
    """``delta^n c_n / n! * H_2n(x) * exp(-x^2)`` with physicists' Hermite H.

    Hermite values come from the normalized recurrence for
    ``H_k / sqrt(2^k k!)`` so large orders neither overflow nor lose digits.
    """
    gauss = math.exp(-x * x)
    psi_prev, psi = 1.0, math.sqrt(2.0) * x  # psi_0, psi_1
    k = 1
    n = 0
    while True:
        # psi holds psi_k; advance to psi_{2n}
        if n == 0:
            h = 1.0
        else:
            while k < 2 * n:
                psi_prev, psi = psi, math.sqrt(2.0 / (k + 1)) * x * psi - math.sqrt(k / (k + 1)) * psi_prev
                k += 1
            h = psi
        c = coefficient(seq, n)
        if c.sign == 0 or (delta == 0 and n > 0) or h == 0:
            yield 0.0
        else:
            log_w = c.log_abs - log_factorial(n) + 0.5 * (2 * n * math.log(2.0) + log_factorial(2 * n))
            if n:
                log_w += n * math.log(abs(delta))
            sign = c.sign * (-1 if (delta < 0 and n % 2) else 1)
            yield sign * h * math.exp(log_w) * gauss
        n += 1


def _glaisher_laguerre_terms(seq: UmbralSequence, delta: float, x: float):
    """``(-4 delta)^n c_n L_n^(-1/2)(x^2) * exp(-x^2)``."""
    z = x * x
    gauss = math.exp(-z)
    a = -0.5
    prev, cur = 1.0, 1.0 + a - z
    n = 0
    while True:
        lag = 1.0 if n == 0 else cur
        c = coefficient(seq, n)
        if c.sign == 0 or (delta == 0 and n > 0):
            yield 0.0
        else:
            log_w = c.log_abs + (n * math.log(4 * abs(delta)) if n else 0.0)
            sign = c.sign * (-1 if (delta > 0 and n % 2) else 1)
            yield sign * lag * math.exp(log_w) * gauss
        if n >= 1:
            prev, cur = cur, ((2 * n + 1 + a - z) * cur - (n + a) * prev) / (n + 1)
        n += 1


def glaisher_evolve(
    seq: UmbralSequence,
    delta: float,
    x: float,
    tol: float = 1e-12,
    max_terms: int = N_MAX,
) -> SeriesEvaluation:
    """``exp(delta c d^2/dx^2) exp(-x^2)`` by the derivative route, cross-checked by the Laguerre route.

    Derivative route: ``sum_n delta^n c_n/n! d^(2n)/dx^(2n) exp(-x^2)``.
    Laguerre route: ``exp(-x^2) sum_n (-4 delta)^n c_n L_n^(-1/2)(x^2)``.
    The returned value is the derivative route. If both converge and differ by
    more than ``10 * tol * max(1, |value|)`` a :class:`RouteDisagreementError` is raised.
    """
    for v in (delta, x):
        if not math.isfinite(v):
            raise ValueError("delta and x must be finite")
    a = sum_series(_glaisher_derivative_terms(seq, delta, x), tol, max_terms)
    b = sum_series(_glaisher_laguerre_terms(seq, delta, x), tol, max_terms)
    delta_ab = abs(a.value - b.value)
    if a.converged and b.converged and delta_ab > ROUTE_FACTOR * tol * max(1.0, abs(a.value)):
        raise RouteDisagreementError(
            f"Glaisher routes disagree at delta={delta}, x={x}: {a.value!r} vs {b.value!r}"
        )
    converged = a.converged and b.converged
    msg = "" if converged else (a.message or b.message)
    return SeriesEvaluation(
        a.value, a.terms_used, a.tail_estimate, converged,
        route_delta=delta_ab,
        routes={"derivative": a.value, "laguerre": b.value},
        message=msg,
    )


def glaisher_closed_form(delta: float, x: float) -> float:
    """Ordinary Glaisher identity ``(1+4 delta)^(-1/2) exp(-x^2/(1+4 delta))`` (the ``c = 1`` case)."""
    s = 1.0 + 4.0 * delta
    return math.exp(-x * x / s) / math.sqrt(s)
