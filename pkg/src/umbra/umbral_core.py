"""Umbral coefficient sequences and the evaluation functional.

An :class:`UmbralSequence` is a rule ``n -> c_n`` that gives meaning to the
formal powers of an umbral symbol ``c^n``.  Coefficients are handed out in
sign + log-magnitude form so that factorial-sized values never overflow a
double; they are only turned into plain numbers when terms are combined.

The pseudo-exponential ``f(x) = sum_n c_n x^n / n!`` is evaluated with a
fixed truncation rule shared by every series in the package (see
:func:`sum_series`).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

N_MAX = 512
STOP_RUN = 3
TAIL_SAFETY = 2.0

KINDS = ("ones", "tricomi", "inverse_shifted_factorial", "explicit")


class SequenceSpecError(ValueError):
    """A sequence specification was rejected.

    ``field`` names the offending key of the JSON spec.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message

    def as_dict(self) -> dict:
        return {"error": "invalid_sequence_spec", "field": self.field, "message": self.message}


def log_factorial(n: int) -> float:
    return math.lgamma(n + 1)


@dataclass(frozen=True)
class LogCoefficient:
    """A real number stored as ``sign * exp(log_abs)``; ``sign`` is 0 for zero."""

    sign: int
    log_abs: float

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __float__(self) -> float:
        return self.value

    @classmethod
    def from_float(cls, v: float) -> "LogCoefficient":
        if v == 0:
            return cls(0, -math.inf)
        return cls(1 if v > 0 else -1, math.log(abs(v)))


@dataclass(frozen=True)
class UmbralSequence:
    """Coefficient rule realizing ``c^n = c_n``.

    ``offset`` is nonzero only for sequences produced by :func:`shift_sequence`;
    the coefficient at index ``n`` is the base rule evaluated at ``n + offset``.
    Explicit sequences are zero beyond the supplied values.
    """

    kind: str
    m: int = 0
    p: int = 0
    values: tuple[float, ...] = ()
    offset: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SequenceSpecError("kind", f"unknown kind {self.kind!r}; valid kinds: {', '.join(KINDS)}")
        if self.kind == "inverse_shifted_factorial":
            if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
                raise SequenceSpecError("m", "must be a positive integer")
            if not isinstance(self.p, int) or isinstance(self.p, bool) or self.p < 0:
                raise SequenceSpecError("p", "must be a nonnegative integer")
        if self.kind == "explicit":
            if len(self.values) == 0:
                raise SequenceSpecError("values", "explicit sequence needs at least c_0")
            if not all(math.isfinite(v) for v in self.values):
                raise SequenceSpecError("values", "entries must be finite numbers")
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")

    @classmethod
    def ones(cls) -> "UmbralSequence":
        return cls("ones")

    @classmethod
    def tricomi(cls) -> "UmbralSequence":
        return cls("tricomi")

    @classmethod
    def inverse_shifted_factorial(cls, m: int, p: int = 0) -> "UmbralSequence":
        return cls("inverse_shifted_factorial", m=m, p=p)

    @classmethod
    def explicit(cls, values: Iterable[float]) -> "UmbralSequence":
        return cls("explicit", values=tuple(float(v) for v in values))

    def to_spec(self) -> dict:
        spec: dict[str, Any] = {"kind": self.kind}
        if self.kind == "inverse_shifted_factorial":
            spec.update(m=self.m, p=self.p)
        elif self.kind == "explicit":
            spec["values"] = list(self.values)
        if self.offset:
            spec["offset"] = self.offset
        return spec


def sequence_from_spec(spec: Mapping[str, Any]) -> UmbralSequence:
    """Build a sequence from its JSON form, e.g. ``{"kind": "tricomi"}``."""
    if not isinstance(spec, Mapping):
        raise SequenceSpecError("<root>", "sequence spec must be a JSON object")
    if "kind" not in spec:
        raise SequenceSpecError("kind", f"missing; valid kinds: {', '.join(KINDS)}")
    kind = spec["kind"]
    if kind not in KINDS:
        raise SequenceSpecError("kind", f"unknown kind {kind!r}; valid kinds: {', '.join(KINDS)}")
    allowed = {"kind", "offset"}
    kwargs: dict[str, Any] = {}
    if kind == "inverse_shifted_factorial":
        allowed |= {"m", "p"}
        if "m" not in spec:
            raise SequenceSpecError("m", "required for inverse_shifted_factorial")
        kwargs["m"] = spec["m"]
        kwargs["p"] = spec.get("p", 0)
    elif kind == "explicit":
        allowed |= {"values"}
        values = spec.get("values")
        if not isinstance(values, list):
            raise SequenceSpecError("values", "must be a list of numbers")
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
            raise SequenceSpecError("values", "must be a list of numbers")
        kwargs["values"] = tuple(float(v) for v in values)
    extra = sorted(set(spec) - allowed)
    if extra:
        raise SequenceSpecError(extra[0], f"unexpected field for kind {kind!r}")
    offset = spec.get("offset", 0)
    if not isinstance(offset, int) or isinstance(offset, bool) or offset < 0:
        raise SequenceSpecError("offset", "must be a nonnegative integer")
    return UmbralSequence(kind, offset=offset, **kwargs)


def _check_index(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"index must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"umbral index must be nonnegative, got {n}")


def coefficient(seq: UmbralSequence, n: int) -> LogCoefficient:
    """Return ``c_n`` in sign/log-magnitude form."""
    _check_index(n)
    j = n + seq.offset
    if seq.kind == "ones":
        return LogCoefficient(1, 0.0)
    if seq.kind == "tricomi":
        return LogCoefficient(-1 if j % 2 else 1, -log_factorial(j))
    if seq.kind == "inverse_shifted_factorial":
        return LogCoefficient(1, -log_factorial(seq.m * j + seq.p))
    if j < len(seq.values):
        return LogCoefficient.from_float(seq.values[j])
    return LogCoefficient(0, -math.inf)


def exact_coefficient(seq: UmbralSequence, n: int) -> Fraction:
    """Return ``c_n`` as an exact rational (explicit floats are taken at face value)."""
    _check_index(n)
    j = n + seq.offset
    if seq.kind == "ones":
        return Fraction(1)
    if seq.kind == "tricomi":
        return Fraction((-1) ** j, math.factorial(j))
    if seq.kind == "inverse_shifted_factorial":
        return Fraction(1, math.factorial(seq.m * j + seq.p))
    if j < len(seq.values):
        return Fraction(seq.values[j])
    return Fraction(0)


def shift_sequence(seq: UmbralSequence, k: int) -> UmbralSequence:
    """The sequence ``n -> c_{n+k}``, i.e. the umbral image of ``c^k`` times a series."""
    _check_index(k)
    if k == 0:
        return seq
    return UmbralSequence(seq.kind, m=seq.m, p=seq.p, values=seq.values, offset=seq.offset + k)


@dataclass(frozen=True)
class SeriesEvaluation:
    """Numeric value of a truncated series plus its truncation bookkeeping.

    ``routes`` holds the values of independent evaluation routes when an
    operation computes more than one; ``route_delta`` is their difference.
    """

    value: complex | float
    terms_used: int
    tail_estimate: float
    converged: bool
    route_delta: float | None = None
    routes: Mapping[str, complex | float] = field(default_factory=dict)
    message: str = ""


def sum_series(
    terms: Iterable[complex | float],
    tol: float,
    max_terms: int = N_MAX,
) -> SeriesEvaluation:
    """Sum ``terms`` until the truncation rule fires.

    The rule: after three consecutive terms each below ``tol * max(1, |S|)``
    the next term is inspected; if twice its magnitude is also below that
    bound the sum stops and that doubled magnitude is the tail estimate.
    Finite iterables that run out are exact sums.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    total: complex | float = 0.0
    run = 0
    used = 0
    last = 0.0
    it = iter(terms)
    for term in it:
        if run >= STOP_RUN:
            tail = TAIL_SAFETY * abs(term)
            if tail <= tol * max(1.0, abs(total)):
                return SeriesEvaluation(total, used, tail, True)
        if used == max_terms:
            tail = TAIL_SAFETY * abs(term)
            return SeriesEvaluation(
                total, used, tail, False,
                message=f"no convergence within {max_terms} terms (next term {abs(term):.3g})",
            )
        total += term
        used += 1
        last = abs(term)
        if not math.isfinite(last):
            return SeriesEvaluation(total, used, math.inf, False, message="non-finite term")
        run = run + 1 if last < tol * max(1.0, abs(total)) else 0
    return SeriesEvaluation(total, used, 0.0, True)


def _check_arg(x: complex | float) -> None:
    if isinstance(x, complex):
        ok = math.isfinite(x.real) and math.isfinite(x.imag)
    else:
        ok = math.isfinite(x)
    if not ok:
        raise ValueError(f"argument must be finite, got {x!r}")


def power_terms(seq: UmbralSequence, z: complex | float, with_factorial: bool):
    """Yield ``c_n z^n`` (divided by ``n!`` when ``with_factorial``) for n = 0, 1, ..."""
    _check_arg(z)
    n = 0
    if z == 0:
        yield coefficient(seq, 0).value * (1.0 + 0j if isinstance(z, complex) else 1.0)
        while True:
            yield 0.0
    logz = math.log(abs(z))
    unit = z / abs(z)
    is_real = not isinstance(z, complex)
    while True:
        c = coefficient(seq, n)
        if c.sign == 0:
            yield 0.0
        else:
            log_mag = c.log_abs + n * logz
            if with_factorial:
                log_mag -= log_factorial(n)
            mag = math.exp(log_mag) if log_mag < 709.0 else math.inf
            if is_real:
                yield c.sign * mag * (unit ** (n % 2))
            else:
                yield c.sign * mag * cmath.exp(1j * n * cmath.phase(unit))
        n += 1


def eval_pseudo_exp(
    seq: UmbralSequence,
    x: complex | float,
    tol: float = 1e-12,
    max_terms: int = N_MAX,
) -> SeriesEvaluation:
    """Evaluate ``f(x) = sum_n c_n x^n / n!``, the umbral image of ``exp(c x)``.

    Non-convergence within ``max_terms`` is reported through ``converged``
    rather than raised.
    """
    return sum_series(power_terms(seq, x, with_factorial=True), tol, max_terms)


def umbral_eval(coeffs: Sequence[Any], seq: UmbralSequence):
    """Apply ``c^k -> c_k`` to the polynomial ``sum_k a_k c^k``.

    Integer/Fraction coefficient lists give an exact Fraction result.
    """
    if all(isinstance(a, (int, Fraction)) and not isinstance(a, bool) for a in coeffs):
        return sum((Fraction(a) * exact_coefficient(seq, k) for k, a in enumerate(coeffs)), Fraction(0))
    total = 0.0
    for k, a in enumerate(coeffs):
        if a:
            total += a * coefficient(seq, k).value
    return total
