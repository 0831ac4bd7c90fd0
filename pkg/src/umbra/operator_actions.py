"""Exponential-operator actions with an umbral argument.

* ``exp(lam c d/dx)`` on polynomials (umbral shift),
* ``exp(lam c x d/dx) x = f(lam) x`` (dilation),
* ``exp(lam c x^2 d/dx) x = x q(x)`` (projective map),
* the addition decomposition ``f(x + y) = sum_n y^n/n! phi_n(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Sequence

from .umbral_core import (
    N_MAX,
    SeriesEvaluation,
    UmbralSequence,
    coefficient,
    eval_pseudo_exp,
    exact_coefficient,
    log_factorial,
    power_terms,
    shift_sequence,
    sum_series,
)


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial ``sum_i coeffs[i] * label^i``.

    Coefficients stay exact (``Fraction``) when every input is an int or
    Fraction. Trailing zeros are stripped; the zero polynomial has no coefficients.
    """

    coeffs: tuple
    label: str = "x"

    def __init__(self, coeffs: Sequence[Number] = (), label: str = "x"):
        cs = [Fraction(c) if _is_exact(c) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "label", label)

    @classmethod
    def monomial(cls, n: int, coeff: Number = 1, label: str = "x") -> "Polynomial":
        return cls([0] * n + [coeff], label)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial([u + v for u, v in zip(a, b)], self.label)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs], self.label)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, s: Number) -> "Polynomial":
        return Polynomial([s * c for c in self.coeffs], self.label)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Polynomial((), self.label)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out, self.label)

    __rmul__ = scale

    def derivative(self, order: int = 1) -> "Polynomial":
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return Polynomial(cs, self.label)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*{self.label}")
            else:
                parts.append(f"{c}*{self.label}^{i}")
        return " + ".join(parts)


def umbral_shift_poly(seq: UmbralSequence, g: Polynomial, lam: Number) -> Polynomial:
    """Apply ``exp(lam c d/dx)`` to ``g``: each ``x^n`` becomes ``(x + lam c)^n``.

    Exact when ``g`` and ``lam`` are exact.
    """
    exact = g.is_exact and _is_exact(lam)
    if exact:
        lam = Fraction(lam)
    out = [Fraction(0) if exact else 0.0] * (len(g.coeffs))
    for n, a in enumerate(g.coeffs):
        if a == 0:
            continue
        for k in range(n + 1):
            ck = exact_coefficient(seq, k) if exact else coefficient(seq, k).value
            out[n - k] += a * math.comb(n, k) * lam**k * ck
    return Polynomial(out, g.label)


def dilation_action(
    seq: UmbralSequence, lam: float, tol: float = 1e-12, max_terms: int = N_MAX
) -> SeriesEvaluation:
    """Factor ``f(lam)`` in ``exp(lam c x d/dx) x = f(lam) x``."""
    return eval_pseudo_exp(seq, lam, tol, max_terms)


def projective_terms(seq: UmbralSequence, lam: float, x: float):
    for term in power_terms(seq, lam * x, with_factorial=False):
        yield x * term


def projective_action(
    seq: UmbralSequence, lam: float, x: float, tol: float = 1e-12, max_terms: int = N_MAX
) -> SeriesEvaluation:
    """``exp(lam c x^2 d/dx) x = x * sum_n c_n (lam x)^n``.

    The series need not converge (``ones`` has radius ``|lam x| < 1``);
    divergence comes back as ``converged=False`` with a message.
    """
    res = sum_series(projective_terms(seq, lam, x), tol, max_terms)
    if not res.converged:
        msg = f"projective series did not converge for lam*x = {lam * x:.6g}: {res.message}"
        return SeriesEvaluation(res.value, res.terms_used, res.tail_estimate, False, message=msg)
    return res


def phi_n(
    seq: UmbralSequence, n: int, x: float, tol: float = 1e-12, max_terms: int = N_MAX
) -> SeriesEvaluation:
    """``phi_n(x) = sum_k c_{n+k} x^k / k!``."""
    return eval_pseudo_exp(shift_sequence(seq, n), x, tol, max_terms)


def addition_decomposition(
    seq: UmbralSequence,
    x: float,
    y: float,
    N: int = 60,
    tol: float = 1e-12,
    max_terms: int = N_MAX,
) -> SeriesEvaluation:
    """``sum_{n <= N} y^n / n! * phi_n(x)``, which reproduces ``f(x + y)``.

    The tail estimate is the magnitude of the last outer term plus the inner
    tails; ``converged`` requires every inner series to converge too.
    """
    if not 0 < N <= max_terms:
        raise ValueError(f"N must be in 1..{max_terms}")
    total = 0.0
    inner_tail = 0.0
    last = 0.0
    ok = True
    for n in range(N + 1):
        if y == 0 and n > 0:
            last = 0.0
            break
        weight = 1.0 if n == 0 else math.copysign(1.0, y) ** n * math.exp(n * math.log(abs(y)) - log_factorial(n))
        inner = phi_n(seq, n, x, tol, max_terms)
        ok = ok and inner.converged
        term = weight * inner.value
        total += term
        inner_tail += weight * inner.tail_estimate
        last = abs(term)
    tail = last + inner_tail
    converged = ok and last <= tol * max(1.0, abs(total))
    msg = "" if converged else "outer or inner series not converged"
    return SeriesEvaluation(total, N + 1, tail, converged, message=msg)
