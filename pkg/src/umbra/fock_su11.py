"""Truncated Fock-space realization of SU(1,1) coherent states and Hermite states.

Two-mode states live on ``|n1, n2>`` with ``n1 + n2 <= cutoff``; single-mode
states on ``|n>`` with ``n <= cutoff``.  Amplitudes are kept in sparse dicts.
Operators that push amplitude past the cutoff drop it and add the lost
squared norm to ``truncation_loss``; nothing is renormalized behind the
caller's back.

``K+ = a1^+ a2^+``, ``K- = a1 a2``, ``K0 = (a1^+ a1 + a2 a2^+)/2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping

from .umbral_core import UmbralSequence, coefficient, log_factorial

OVERLAP_ATOL = 1e-12
COHERENT_TAIL_LIMIT = 1e-14
OMEGA_TAIL_LIMIT = 1e-8


class CutoffError(ValueError):
    """The Fock cutoff is too small for the requested state."""

    def __init__(self, message: str, tail_estimate: float):
        super().__init__(f"{message} (tail estimate {tail_estimate:.3e})")
        self.tail_estimate = tail_estimate


def _prune(amps: Mapping) -> dict:
    return {k: v for k, v in amps.items() if v != 0}


@dataclass(frozen=True)
class TwoModeState:
    amplitudes: Mapping[tuple[int, int], complex]
    cutoff: int
    truncation_loss: float = 0.0

    def __post_init__(self):
        for n1, n2 in self.amplitudes:
            if n1 < 0 or n2 < 0 or n1 + n2 > self.cutoff:
                raise ValueError(f"basis state |{n1},{n2}> outside cutoff {self.cutoff}")
        object.__setattr__(self, "amplitudes", _prune(self.amplitudes))

    @classmethod
    def basis(cls, n1: int, n2: int, cutoff: int, amplitude=1.0) -> "TwoModeState":
        return cls({(n1, n2): amplitude}, cutoff)

    def norm(self) -> float:
        return math.sqrt(sum(abs(complex(a)) ** 2 for a in self.amplitudes.values()))

    def __add__(self, other: "TwoModeState") -> "TwoModeState":
        out = dict(self.amplitudes)
        for k, v in other.amplitudes.items():
            out[k] = out.get(k, 0) + v
        return TwoModeState(out, self.cutoff, self.truncation_loss + other.truncation_loss)

    def scale(self, s) -> "TwoModeState":
        return TwoModeState({k: s * v for k, v in self.amplitudes.items()}, self.cutoff, self.truncation_loss)

    def __sub__(self, other: "TwoModeState") -> "TwoModeState":
        return self + other.scale(-1)


@dataclass(frozen=True)
class SingleModeState:
    amplitudes: Mapping[int, complex]
    cutoff: int
    truncation_loss: float = 0.0
    tail_estimate: float = 0.0

    def __post_init__(self):
        for n in self.amplitudes:
            if n < 0 or n > self.cutoff:
                raise ValueError(f"basis state |{n}> outside cutoff {self.cutoff}")
        object.__setattr__(self, "amplitudes", _prune(self.amplitudes))

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def to_dense(self):
        import numpy as np

        v = np.zeros(self.cutoff + 1, dtype=complex)
        for n, a in self.amplitudes.items():
            v[n] = a
        return v


@dataclass(frozen=True)
class CoherentParams:
    alpha: complex
    m: int = 0

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be nonnegative")


def inner(a, b) -> complex:
    """Sparse inner product ``<a|b>``."""
    small, large = (a.amplitudes, b.amplitudes)
    total = 0j
    for k, va in small.items():
        vb = large.get(k)
        if vb is not None:
            total += complex(va).conjugate() * vb
    return total


def apply_K(which: str, s: TwoModeState, exact: bool = False) -> TwoModeState:
    """Apply ``K+``, ``K-`` or ``K0`` to a two-mode state.

    With ``exact=True`` the square roots are symbolic (sympy), so products of
    matrix elements come out as exact integers.
    """
    if exact:
        import sympy  # only the exact path needs it; keeps CLI start-up light

        root, half = sympy.sqrt, sympy.Rational(1, 2)
    else:
        root, half = math.sqrt, 0.5
    out: dict[tuple[int, int], complex] = {}
    lost = 0.0
    for (n1, n2), amp in s.amplitudes.items():
        if which == "plus":
            key = (n1 + 1, n2 + 1)
            val = root((n1 + 1) * (n2 + 1)) * amp
            if n1 + n2 + 2 > s.cutoff:
                lost += abs(complex(val)) ** 2
                continue
        elif which == "minus":
            if n1 == 0 or n2 == 0:
                continue
            key = (n1 - 1, n2 - 1)
            val = root(n1 * n2) * amp
        elif which == "zero":
            key = (n1, n2)
            val = half * (n1 + n2 + 1) * amp
        else:
            raise ValueError(f"which must be plus, minus or zero, got {which!r}")
        out[key] = out.get(key, 0) + val
    return TwoModeState(out, s.cutoff, s.truncation_loss + lost)


def _coherent_norm_terms(x: float, m: int):
    """Terms ``x^k / (k! (m+k)!)`` of the positive normalization series."""
    term = 1.0 / math.factorial(m)
    k = 0
    while True:
        yield term
        term *= x / ((k + 1) * (m + k + 1))
        k += 1


def _coherent_series(z: complex, m: int, kmax: int) -> complex:
    terms = []
    term = complex(1.0 / math.factorial(m))
    for k in range(kmax + 1):
        terms.append(term)
        term *= z / ((k + 1) * (m + k + 1))
    return math.fsum(t.real for t in terms) + 1j * math.fsum(t.imag for t in terms)


def _coherent_norm(x: float, m: int, nmax: int) -> tuple[float, float]:
    """Return (series up to nmax, tail beyond nmax) of ``sum x^k/(k!(m+k)!)``."""
    head = 0.0
    tail = 0.0
    for k, t in enumerate(_coherent_norm_terms(x, m)):
        if k <= nmax:
            head += t
        else:
            tail += t
            if t < 1e-30 * head or k > nmax + 400:
                break
    return head, tail


def build_coherent(p: CoherentParams, cutoff: int) -> TwoModeState:
    """Unit-norm coherent state ``|alpha, m>`` with amplitudes on ``|n, n+m>``.

    Amplitudes are ``(-alpha)^n / sqrt(n! (n+m)!)`` divided by
    ``sqrt(sum_k |alpha|^(2k) / (k! (m+k)!))``.
    """
    alpha, m = complex(p.alpha), p.m
    if cutoff < m:
        raise CutoffError(f"cutoff {cutoff} cannot hold |0,{m}>", math.inf)
    nmax = (cutoff - m) // 2
    x = abs(alpha) ** 2
    head, tail = _coherent_norm(x, m, nmax)
    rel_tail = tail / (head + tail)
    if rel_tail >= COHERENT_TAIL_LIMIT:
        raise CutoffError(f"cutoff {cutoff} too small for |alpha|={abs(alpha):.4g}, m={m}", rel_tail)
    norm = math.sqrt(head + tail)
    amps = {}
    for n in range(nmax + 1):
        if alpha == 0 and n > 0:
            break
        log_mag = -0.5 * (log_factorial(n) + log_factorial(n + m))
        if n:
            log_mag += n * math.log(abs(alpha))
        phase = cmath.exp(1j * n * cmath.phase(-alpha)) if n else 1.0
        amps[(n, n + m)] = phase * math.exp(log_mag) / norm
    return TwoModeState(amps, cutoff)


def overlap_coherent(p: CoherentParams, q: CoherentParams, cutoff: int) -> complex:
    """``<alpha, m | alpha', m'>`` from the closed series, checked against the sparse product.

    Raises ``AssertionError`` if the two disagree beyond 1e-12.
    """
    if p.m != q.m:
        closed = 0j
    else:
        m = p.m
        nmax = (cutoff - m) // 2 + 200
        num = _coherent_series(complex(p.alpha).conjugate() * complex(q.alpha), m, nmax)
        na, _ = _coherent_norm(abs(p.alpha) ** 2, m, nmax)
        nb, _ = _coherent_norm(abs(q.alpha) ** 2, m, nmax)
        closed = num / math.sqrt(na * nb)
    direct = inner(build_coherent(p, cutoff), build_coherent(q, cutoff))
    if abs(direct - closed) > OVERLAP_ATOL:
        raise AssertionError(f"coherent overlap mismatch: closed {closed} vs direct {direct}")
    return complex(closed)


def _hermite_component_log(n: int, k: int, omega: complex) -> tuple[complex, float]:
    """Phase and log-magnitude of the ``|n - 2k>`` amplitude of ``|h_n>``; requires omega != 0."""
    j = n - 2 * k
    log_mag = (
        log_factorial(n) + n * math.log(abs(omega)) - k * math.log(2)
        - log_factorial(k) - 0.5 * log_factorial(j)
    )
    return cmath.exp(-1j * j * cmath.phase(omega)), log_mag


def hermite_component(n: int, k: int, omega: complex) -> complex:
    """Amplitude of ``|h_n>`` on ``|n - 2k>``: ``n! w^(n-2k) |w|^(2k) / (2^k k! sqrt((n-2k)!))``, ``w = conj(omega)``."""
    if omega == 0:
        return 1 + 0j if n == 0 else 0j
    phase, log_mag = _hermite_component_log(n, k, omega)
    return phase * math.exp(log_mag)


def build_hermite_state(n: int, omega: complex, cutoff: int) -> SingleModeState:
    """Hermite quantum state ``|h_n> = H_n(conj(omega) a^+, |omega|^2/2)|0>``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cutoff:
        raise ValueError(f"n = {n} exceeds cutoff {cutoff}")
    return SingleModeState({n - 2 * k: hermite_component(n, k, omega) for k in range(n // 2 + 1)}, cutoff)


def hermite_norm(n: int, omega: complex, log_scale: float = 0.0) -> float:
    """``exp(log_scale) * || |h_n> ||``, computed from the components without a cutoff.

    ``log_scale`` lets callers fold in weights like ``1/n!`` before exponentiating.
    """
    if omega == 0:
        return math.exp(log_scale) if n == 0 else 0.0
    logs = [_hermite_component_log(n, k, omega)[1] + log_scale for k in range(n // 2 + 1)]
    top = max(logs)
    return math.exp(top) * math.sqrt(sum(math.exp(2 * (v - top)) for v in logs))


def overlap_hermite_formula(n: int, m: int, omega: complex) -> complex | None:
    """Closed-form scalar product quoted for ``<h_n|h_m>``; None unless ``n - m`` is even and >= 0."""
    d = n - m
    if d < 0 or d % 2:
        return None
    r = abs(omega)
    s = sum(
        1.0 / (4**k * math.factorial(k) * math.factorial(d // 2 + k) * math.factorial(n - 2 * k))
        for k in range(n // 2 + 1)
    )
    return complex(math.factorial(n) * math.factorial(m) / math.sqrt(2.0**d) * r ** (n + m) * s)


@dataclass(frozen=True)
class HermiteOverlapReport:
    value: complex
    formula: complex | None
    difference: float | None = field(default=None)


def overlap_hermite(n: int, m: int, omega: complex, cutoff: int) -> HermiteOverlapReport:
    """``<h_n|h_m>`` by direct sparse product, alongside the closed formula where defined.

    The two agree on the diagonal but not in general off it (e.g. ``(2, 0)``
    gives ``|omega|^2`` directly and ``0.625 |omega|^2`` from the formula);
    both are reported and the direct value is authoritative.
    """
    direct = inner(build_hermite_state(n, omega, cutoff), build_hermite_state(m, omega, cutoff))
    formula = overlap_hermite_formula(n, m, omega)
    diff = None if formula is None else abs(direct - formula)
    return HermiteOverlapReport(direct, formula, diff)


def proj_hermite(m: int, n: int, omega: complex) -> complex:
    """``<m|h_n>``: zero unless ``n - m`` is even and nonnegative."""
    d = n - m
    if d < 0 or d % 2:
        return 0j
    w = complex(omega).conjugate()
    r = abs(omega)
    return (
        math.factorial(n) / math.sqrt(2.0**d) * w**m * r**d
        / (math.factorial(d // 2) * math.sqrt(math.factorial(m)))
    )


def apply_a(s: SingleModeState) -> SingleModeState:
    """Annihilation operator: ``a|n> = sqrt(n)|n-1>``."""
    return SingleModeState(
        {n - 1: math.sqrt(n) * v for n, v in s.amplitudes.items() if n > 0}, s.cutoff, s.truncation_loss
    )


def apply_adag(s: SingleModeState) -> SingleModeState:
    """Creation operator; amplitude pushed past the cutoff is recorded as truncation loss."""
    out = {}
    lost = 0.0
    for n, v in s.amplitudes.items():
        val = math.sqrt(n + 1) * v
        if n + 1 > s.cutoff:
            lost += abs(val) ** 2
        else:
            out[n + 1] = val
    return SingleModeState(out, s.cutoff, s.truncation_loss + lost)


def build_omega_state(
    seq: UmbralSequence, omega: complex, cutoff: int, n_h: int, tail_terms: int = 60
) -> SingleModeState:
    """Umbral image of ``sum_n c^n/n! |h_n>``, truncated at ``n_h``.

    The omitted tail is bounded by ``sum_{n > n_h} |c_n|/n! || h_n ||`` over the
    next ``tail_terms`` orders and attached as ``tail_estimate``; for
    ``|omega| <= 1`` a tail above 1e-8 raises :class:`CutoffError`.
    """
    if n_h < 0:
        raise ValueError("n_h must be nonnegative")
    if n_h > cutoff:
        raise ValueError(f"n_h = {n_h} exceeds cutoff {cutoff}")
    amps: dict[int, complex] = {}
    if omega == 0:
        return SingleModeState({0: complex(coefficient(seq, 0).value)}, cutoff)
    for n in range(n_h + 1):
        c = coefficient(seq, n)
        if c.sign == 0:
            continue
        for k in range(n // 2 + 1):
            phase, log_mag = _hermite_component_log(n, k, omega)
            j = n - 2 * k
            amps[j] = amps.get(j, 0j) + c.sign * phase * math.exp(log_mag + c.log_abs - log_factorial(n))
    tail = 0.0
    for n in range(n_h + 1, n_h + 1 + tail_terms):
        c = coefficient(seq, n)
        if c.sign:
            tail += hermite_norm(n, omega, c.log_abs - log_factorial(n))
    if abs(omega) <= 1 and tail > OMEGA_TAIL_LIMIT:
        raise CutoffError(f"n_h = {n_h} too small for |omega| = {abs(omega):.4g}", tail)
    return SingleModeState(amps, cutoff, tail_estimate=tail)
