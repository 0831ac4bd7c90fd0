"""Umbral Laplace and Fourier representations, each computed by a series and a quadrature route.

Laplace: ``(1 + c x)^(-nu) = 1/Gamma(nu) int_0^inf exp(-s) f(-s x) s^(nu-1) ds``
with ``f`` the pseudo-exponential of the sequence; the series route is
``sum_k (-x)^k Gamma(k + nu) c_k / (k! Gamma(nu))``.

Fourier: ``F(c x) = (2 pi)^(-1/2) int Ftilde(k) f(i k x) dk`` against the direct
umbral image ``sum_n F_n c_n x^n`` of the Taylor coefficients ``F_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from scipy.special import roots_genlaguerre

from .evolution import ROUTE_FACTOR, RouteDisagreementError
from .umbral_core import (
    N_MAX,
    SeriesEvaluation,
    UmbralSequence,
    coefficient,
    eval_pseudo_exp,
    sum_series,
    umbral_eval,
)

INTEGRAND_LIMIT = 1e6
FT_DECAY = 1e-14
INNER_TOL = 1e-16


class QuadratureError(ArithmeticError):
    """A quadrature route failed (refinement exhausted or integrand out of range)."""


@dataclass(frozen=True)
class QuadratureSpec:
    """``scheme`` is ``gauss_laguerre`` (uses ``order``) or ``adaptive_trapezoid``
    (uses ``bounds``, or picks a symmetric interval from the transform's decay,
    and halves the step up to ``max_refinements`` times)."""

    scheme: str = "gauss_laguerre"
    order: int = 64
    bounds: tuple[float, float] | None = None
    max_refinements: int = 12
    tol: float = 1e-10

    def __post_init__(self):
        if self.scheme not in ("gauss_laguerre", "adaptive_trapezoid"):
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if self.bounds is not None:
            lo, hi = self.bounds
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError("bounds must be finite with lo < hi")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


LAPLACE_DEFAULT = QuadratureSpec("gauss_laguerre", order=64)
FOURIER_DEFAULT = QuadratureSpec("adaptive_trapezoid", tol=1e-10)


def laplace_series_term(seq: UmbralSequence, nu: float, x: float, k: int) -> float:
    """``(-x)^k Gamma(k + nu) c_k / (k! Gamma(nu))``, assembled in log form."""
    c = coefficient(seq, k)
    if c.sign == 0 or (x == 0 and k > 0):
        return 0.0
    log_mag = c.log_abs + math.lgamma(k + nu) - math.lgamma(nu) - math.lgamma(k + 1)
    if k:
        log_mag += k * math.log(abs(x))
    sign = c.sign * (-1 if (x > 0 and k % 2) else 1)
    return sign * math.exp(log_mag)


def _laplace_series(seq, nu, x, tol, max_terms) -> SeriesEvaluation:
    def terms():
        k = 0
        while True:
            yield laplace_series_term(seq, nu, x, k)
            k += 1

    return sum_series(terms(), tol, max_terms)


def _gauss_laguerre(seq, nu, x, order, max_terms) -> tuple[float, bool]:
    nodes, weights = roots_genlaguerre(order, nu - 1)
    total = 0.0
    ok = True
    for s, w in zip(nodes, weights):
        inner = eval_pseudo_exp(seq, -float(s) * x, INNER_TOL, max_terms)
        ok = ok and inner.converged
        total += float(w) * inner.value
    return total / math.gamma(nu), ok


def umbral_laplace(
    seq: UmbralSequence,
    nu: float,
    x: float,
    q: QuadratureSpec = LAPLACE_DEFAULT,
    max_terms: int = N_MAX,
) -> SeriesEvaluation:
    """Umbral image of ``(1 + c x)^(-nu)``.

    The quadrature route uses generalized Gauss-Laguerre nodes (weight
    ``s^(nu-1) exp(-s)``) and estimates its error against a rule of 3/4 the
    order.  The series route is tried for every sequence; when it converges
    its value is returned and ``route_delta`` holds the gap to the quadrature.
    """
    if not nu > 0:
        raise ValueError("nu must be positive")
    if not (math.isfinite(x) and x >= 0):
        raise ValueError("x must be finite and nonnegative")
    if q.scheme != "gauss_laguerre":
        raise ValueError("umbral_laplace supports the gauss_laguerre scheme")
    quad, ok_hi = _gauss_laguerre(seq, nu, x, q.order, max_terms)
    coarse, ok_lo = _gauss_laguerre(seq, nu, x, max(2, (3 * q.order) // 4), max_terms)
    q_tail = abs(quad - coarse)
    q_ok = ok_hi and ok_lo and q_tail <= q.tol * max(1.0, abs(quad))
    series = _laplace_series(seq, nu, x, min(q.tol, 1e-14), max_terms)
    routes = {"quadrature": quad}
    if not series.converged:
        msg = "" if q_ok else "quadrature did not converge"
        return SeriesEvaluation(quad, q.order, q_tail, q_ok, routes=routes, message=msg)
    routes["series"] = series.value
    diff = abs(series.value - quad)
    if q_ok and diff > ROUTE_FACTOR * q.tol * max(1.0, abs(series.value)):
        raise RouteDisagreementError(f"Laplace routes disagree: series {series.value!r} vs quadrature {quad!r}")
    return SeriesEvaluation(
        series.value, series.terms_used, series.tail_estimate, True,
        route_delta=diff, routes=routes,
        message="" if q_ok else "quadrature route did not converge; series value returned",
    )


def gaussian_taylor(n_terms: int = 160) -> list[float]:
    """Taylor coefficients of ``exp(-x^2/2)``."""
    out = [0.0] * n_terms
    for j in range((n_terms + 1) // 2):
        out[2 * j] = (-0.5) ** j / math.factorial(j)
    return out


def gaussian_ft(k: float) -> float:
    """Unitary Fourier transform of ``exp(-x^2/2)`` (itself)."""
    return math.exp(-0.5 * k * k)


def _decay_bound(ftilde: Callable[[float], float]) -> float:
    K = 1.0
    while K < 1e4:
        if abs(ftilde(K)) < FT_DECAY and abs(ftilde(-K)) < FT_DECAY:
            return K
        K *= 1.25
    raise QuadratureError("Fourier transform does not decay below 1e-14 on |k| < 1e4")


def _trapezoid(func, lo: float, hi: float, tol: float, max_refinements: int):
    n = 64
    h = (hi - lo) / n
    total = 0.5 * (func(lo) + func(hi)) + sum(func(lo + i * h) for i in range(1, n))
    est = total * h
    for _ in range(max_refinements):
        h /= 2
        total += sum(func(lo + (2 * i + 1) * h) for i in range(n))
        n *= 2
        new = total * h
        if abs(new - est) <= tol * max(1.0, abs(new)):
            return new, abs(new - est), True, n
        est = new
    return est, math.inf, False, n


def umbral_fourier(
    f_coeffs: Sequence[float],
    ftilde: Callable[[float], float],
    seq: UmbralSequence,
    x: float,
    q: QuadratureSpec = FOURIER_DEFAULT,
    max_terms: int = N_MAX,
) -> SeriesEvaluation:
    """Umbral image of ``F(c x)``: direct series value, cross-checked by quadrature.

    Raises :class:`QuadratureError` when ``|Ftilde(k) f(i k x)|`` exceeds 1e6
    on the grid, and :class:`RouteDisagreementError` on a route gap above
    ``10 * q.tol * max(1, |value|)``.
    """
    if q.scheme != "adaptive_trapezoid":
        raise ValueError("umbral_fourier supports the adaptive_trapezoid scheme")
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    direct = umbral_eval([a * x**n for n, a in enumerate(f_coeffs)], seq)
    lo, hi = q.bounds if q.bounds is not None else (-_decay_bound(ftilde), _decay_bound(ftilde))
    inner_ok = True

    def integrand(k: float) -> complex:
        nonlocal inner_ok
        inner = eval_pseudo_exp(seq, 1j * k * x, INNER_TOL, max_terms)
        inner_ok = inner_ok and inner.converged
        val = ftilde(k) * inner.value
        if abs(val) > INTEGRAND_LIMIT:
            raise QuadratureError(f"integrand magnitude {abs(val):.3g} at k={k:.4g} exceeds {INTEGRAND_LIMIT:g}")
        return val

    integral, err, ok, nodes = _trapezoid(integrand, lo, hi, q.tol, q.max_refinements)
    quad = integral / math.sqrt(2 * math.pi)
    q_ok = ok and inner_ok
    diff = abs(direct - quad)
    if q_ok and diff > ROUTE_FACTOR * q.tol * max(1.0, abs(direct)):
        raise RouteDisagreementError(f"Fourier routes disagree: direct {direct!r} vs quadrature {quad!r}")
    return SeriesEvaluation(
        direct, len(f_coeffs), err / math.sqrt(2 * math.pi), q_ok,
        route_delta=diff,
        routes={"series": direct, "quadrature": quad},
        message="" if q_ok else "quadrature refinement exhausted",
    )
