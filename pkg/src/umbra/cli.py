"""Command-line interface.

Every subcommand writes either JSON (one object per line for grid sweeps,
a single object for state/polynomial outputs) or CSV with a fixed column
order.  Floats are printed with 17 significant digits, so re-parsing gives
back the same doubles.

Exit status: 0 when every record converged, 1 when something did not
converge or a check failed (partial output is still written), 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, TextIO

from . import evolution, fock_su11, special_functions, transforms
from .operator_actions import Polynomial
from .umbral_core import KINDS, N_MAX, SequenceSpecError, UmbralSequence, eval_pseudo_exp, sequence_from_spec

SUBCOMMANDS = ("eval", "special", "coherent", "hermite-states", "evolve", "heat", "transform")
MAX_TERMS_ENV = "UMBRA_MAX_TERMS"
MAX_TERMS_RANGE = (16, 4096)

CSV_COLUMNS = {
    "eval": ["x", "value", "terms_used", "tail_estimate", "converged"],
    "special": ["x", "value", "terms_used", "tail_estimate", "converged"],
    "evolve": ["x", "value", "route_delta", "terms", "tail_estimate", "converged"],
    "transform": ["x", "value_series", "value_quadrature", "abs_diff", "converged"],
    "heat": ["x", "t", "value"],
    "coherent": ["n", "n2", "re", "im"],
    "hermite-states": ["n", "re", "im"],
}

EPILOG = "CSV columns:\n" + "\n".join(f"  {k}: {','.join(v)}" for k, v in CSV_COLUMNS.items())


class UsageError(Exception):
    pass


@dataclass
class CommandSpec:
    subcommand: str
    seq: UmbralSequence | None = None
    x_values: list[float] = field(default_factory=list)
    t_values: list[float] = field(default_factory=list)
    tol: float = 1e-10
    cutoff: int | None = None
    nu: float = 1.0
    delta: float = 0.0
    m: int = 0
    n: int = 0
    y: float = 0.0
    omega: complex = 0j
    alpha: complex = 0j
    n_h: int | None = None
    function: str | None = None
    kind: str | None = None
    g: Polynomial | None = None
    output: str = "json"
    out_path: str | None = None
    max_terms: int = N_MAX


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_grid(text: str) -> list[float]:
    """``start:stop:count`` -> evenly spaced values, endpoints included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"grid must be start:stop:count, got {text!r}") from None
    if count < 1:
        raise UsageError(f"grid count must be >= 1, got {count}")
    if not (math.isfinite(start) and math.isfinite(stop)) or start > stop:
        raise UsageError(f"grid needs finite start <= stop, got {text!r}")
    if count == 1:
        return [start]
    return [start + i * (stop - start) / (count - 1) for i in range(count)]


def parse_complex(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"complex value must be re or re,im, got {text!r}") from None
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise UsageError(f"complex value must be re or re,im, got {text!r}")


def parse_sequence(text: str) -> UmbralSequence:
    """Sequence spec given inline as JSON or as a path to a JSON file."""
    raw = text
    if not text.lstrip().startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise UsageError(f"--seq: not inline JSON and no such file: {text}")
        raw = path.read_text(encoding="utf-8")
    try:
        spec = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--seq: invalid JSON ({exc.msg})") from None
    try:
        return sequence_from_spec(spec)
    except SequenceSpecError as exc:
        raise UsageError(f"--seq: {exc}") from None


def _coeff_list(text: str) -> Polynomial:
    try:
        return Polynomial([Fraction(p.strip()) for p in text.split(",")])
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--g must be comma-separated rationals, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--out", dest="out_path", help="output file (default: stdout)")
    common.add_argument("--tol", type=float, default=1e-10)

    def seq_arg(p, required=True):
        p.add_argument("--seq", required=required, help=f"sequence spec JSON or file; kinds: {', '.join(KINDS)}")

    def x_args(p):
        p.add_argument("--x", type=float)
        p.add_argument("--x-grid", help="start:stop:count")

    parser = _Parser(prog="umbra", description="Umbral operator toolkit.", epilog=EPILOG,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="pseudo-exponential f(x) = sum c_n x^n/n!")
    seq_arg(p)
    x_args(p)

    p = sub.add_parser("special", parents=[common], help="Tricomi C_n, Hermite H_n(x,y), L_n^(-1/2), hybrid LH_m")
    p.add_argument("--function", choices=("tricomi", "hermite", "laguerre", "hybrid"), required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--y", type=float, default=0.0)
    x_args(p)

    p = sub.add_parser("coherent", parents=[common], help="SU(1,1) coherent state |alpha, m>")
    p.add_argument("--alpha", default="0", help="re,im")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--cutoff", type=int, default=60)

    p = sub.add_parser("hermite-states", parents=[common], help="Hermite state |h_n> or, with --nh, the umbral state |Omega>")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--omega", default="0", help="re,im")
    p.add_argument("--cutoff", type=int, default=40)
    p.add_argument("--nh", dest="n_h", type=int)
    seq_arg(p, required=False)

    p = sub.add_parser("evolve", parents=[common], help="umbral Glaisher evolution of exp(-x^2)")
    seq_arg(p)
    p.add_argument("--delta", type=float, required=True)
    x_args(p)

    p = sub.add_parser("heat", parents=[common], help="pseudo-heat equation for polynomial data")
    p.add_argument("--g", required=True, help="coefficients a0,a1,... of g(x)")
    p.add_argument("--t-grid", default="0:0:1")
    p.add_argument("--x-grid", default="0:0:1")

    p = sub.add_parser("transform", parents=[common], help="umbral Laplace / Fourier transforms")
    p.add_argument("--kind", choices=("laplace", "fourier"), required=True)
    seq_arg(p)
    p.add_argument("--nu", type=float, default=1.0)
    x_args(p)
    return parser


def _max_terms_from_env(environ) -> int:
    raw = environ.get(MAX_TERMS_ENV)
    if raw is None or raw == "":
        return N_MAX
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"{MAX_TERMS_ENV} must be an integer, got {raw!r}") from None
    lo, hi = MAX_TERMS_RANGE
    if not lo <= val <= hi:
        raise UsageError(f"{MAX_TERMS_ENV} must be in [{lo}, {hi}], got {val}")
    return val


def parse_args(argv: list[str], environ=None) -> CommandSpec:
    """Validate ``argv`` into a :class:`CommandSpec`; raises :class:`UsageError`."""
    ns = build_parser().parse_args(argv)
    spec = CommandSpec(ns.subcommand, output=ns.output, out_path=ns.out_path, tol=ns.tol)
    spec.max_terms = _max_terms_from_env(os.environ if environ is None else environ)
    if not (spec.tol > 0 and math.isfinite(spec.tol)):
        raise UsageError("--tol must be a positive number")
    if getattr(ns, "seq", None) is not None:
        spec.seq = parse_sequence(ns.seq)
    if hasattr(ns, "x") and ns.subcommand != "heat":
        if ns.x is not None and ns.x_grid is not None:
            raise UsageError("give either --x or --x-grid, not both")
        if ns.x_grid is not None:
            spec.x_values = parse_grid(ns.x_grid)
        elif ns.x is not None:
            spec.x_values = [ns.x]
        else:
            raise UsageError("one of --x or --x-grid is required")
    sc = ns.subcommand
    if sc == "special":
        spec.function, spec.n, spec.y = ns.function, ns.n, ns.y
        if spec.n < 0:
            raise UsageError("--n must be nonnegative")
    elif sc == "coherent":
        spec.alpha, spec.m, spec.cutoff = parse_complex(ns.alpha), ns.m, ns.cutoff
        if spec.m < 0 or spec.cutoff < 1:
            raise UsageError("--m must be >= 0 and --cutoff >= 1")
    elif sc == "hermite-states":
        spec.n, spec.omega, spec.cutoff, spec.n_h = ns.n, parse_complex(ns.omega), ns.cutoff, ns.n_h
        if spec.n < 0 or spec.cutoff < 1:
            raise UsageError("--n must be >= 0 and --cutoff >= 1")
        if spec.n_h is not None and spec.seq is None:
            spec.seq = UmbralSequence.ones()
    elif sc == "evolve":
        spec.delta = ns.delta
    elif sc == "heat":
        spec.g = _coeff_list(ns.g)
        spec.t_values = parse_grid(ns.t_grid)
        spec.x_values = parse_grid(ns.x_grid)
    elif sc == "transform":
        spec.kind, spec.nu = ns.kind, ns.nu
        if not spec.nu > 0:
            raise UsageError("--nu must be positive")
    return spec


def fmt_number(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if v is None:
        return ""
    v = float(v)
    if not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return format(v, ".17g")


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_number(v) if math.isfinite(v) else "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot encode {type(v).__name__}")


def dumps(obj: Any) -> str:
    """JSON text with 17-significant-digit floats."""
    return _json_value(obj)


def _emit(records: Iterable[dict], spec: CommandSpec, stream: TextIO, single: dict | None = None) -> None:
    if spec.output == "json":
        if single is not None:
            stream.write(dumps(single) + "\n")
        else:
            for rec in records:
                stream.write(dumps(rec) + "\n")
        return
    cols = CSV_COLUMNS[spec.subcommand]
    stream.write(",".join(cols) + "\n")
    for rec in records:
        stream.write(",".join(fmt_number(rec.get(c)) for c in cols) + "\n")


def _series_record(x: float, res) -> dict:
    return {
        "x": x,
        "value": float(res.value),
        "terms_used": res.terms_used,
        "tail_estimate": float(res.tail_estimate),
        "converged": bool(res.converged),
    }


def _run_eval(spec):
    for x in spec.x_values:
        yield _series_record(x, eval_pseudo_exp(spec.seq, x, spec.tol, spec.max_terms))


def _run_special(spec):
    for x in spec.x_values:
        if spec.function == "tricomi":
            yield _series_record(x, special_functions.tricomi_C(spec.n, x, spec.tol, spec.max_terms))
            continue
        if spec.function == "hermite":
            val, terms = special_functions.hermite_2var(spec.n, x, spec.y), spec.n // 2 + 1
        elif spec.function == "laguerre":
            val, terms = special_functions.laguerre_half(spec.n, x), spec.n + 1
        else:
            val, terms = special_functions.hybrid_LH(spec.n, x, spec.y), spec.n // 2 + 1
        yield {"x": x, "value": float(val), "terms_used": terms, "tail_estimate": 0.0, "converged": True}


def _run_evolve(spec):
    for x in spec.x_values:
        r = evolution.glaisher_evolve(spec.seq, spec.delta, x, spec.tol, spec.max_terms)
        yield {
            "x": x, "value": float(r.value), "route_delta": float(r.route_delta),
            "terms": r.terms_used, "tail_estimate": float(r.tail_estimate), "converged": bool(r.converged),
        }


def _run_transform(spec):
    for x in spec.x_values:
        if spec.kind == "laplace":
            q = transforms.QuadratureSpec("gauss_laguerre", order=64, tol=spec.tol)
            r = transforms.umbral_laplace(spec.seq, spec.nu, x, q, spec.max_terms)
        else:
            q = transforms.QuadratureSpec("adaptive_trapezoid", tol=spec.tol)
            r = transforms.umbral_fourier(
                transforms.gaussian_taylor(), transforms.gaussian_ft, spec.seq, x, q, spec.max_terms
            )
        series = r.routes.get("series")
        quad = complex(r.routes["quadrature"]).real
        yield {
            "x": x,
            "value_series": None if series is None else float(series),
            "value_quadrature": quad,
            "abs_diff": None if r.route_delta is None else float(r.route_delta),
            "converged": bool(r.converged),
        }


def _state_payload(state, two_mode: bool) -> tuple[dict, list[dict]]:
    rows = []
    for key in sorted(state.amplitudes):
        a = complex(state.amplitudes[key])
        if two_mode:
            rows.append({"n": key[0], "n2": key[1], "re": a.real, "im": a.imag})
        else:
            rows.append({"n": key, "re": a.real, "im": a.imag})
    payload = {"amplitudes": rows, "norm": state.norm(), "truncation_loss": float(state.truncation_loss)}
    if not two_mode:
        payload["tail_estimate"] = float(state.tail_estimate)
    return payload, rows


def run_command(spec: CommandSpec, stream: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute ``spec``, writing records to ``stream``; returns the exit status."""
    stream = sys.stdout if stream is None else stream
    err = sys.stderr if err is None else err
    records: list[dict] = []
    try:
        sc = spec.subcommand
        if sc in ("eval", "special", "evolve", "transform"):
            runner = {"eval": _run_eval, "special": _run_special, "evolve": _run_evolve, "transform": _run_transform}[sc]
            def tracked():
                for rec in runner(spec):
                    records.append(rec)
                    yield rec

            _emit(tracked(), spec, stream)
            return 0 if all(r["converged"] for r in records) else 1
        if sc == "coherent":
            state = fock_su11.build_coherent(fock_su11.CoherentParams(spec.alpha, spec.m), spec.cutoff)
            payload, rows = _state_payload(state, two_mode=True)
            _emit(rows, spec, stream, single=payload)
            return 0
        if sc == "hermite-states":
            if spec.n_h is None:
                state = fock_su11.build_hermite_state(spec.n, spec.omega, spec.cutoff)
            else:
                state = fock_su11.build_omega_state(spec.seq, spec.omega, spec.cutoff, spec.n_h)
            payload, rows = _state_payload(state, two_mode=False)
            _emit(rows, spec, stream, single=payload)
            return 0
        if sc == "heat":
            F = evolution.pseudo_heat_solve(spec.g)
            rows = [{"x": x, "t": t, "value": float(F(Fraction(x), Fraction(t)))}
                    for t in spec.t_values for x in spec.x_values]
            coeffs = [{"x_power": i, "t_power": j, "numerator": c.numerator, "denominator": c.denominator}
                      for (i, j), c in F.terms.items()]
            residual_zero = evolution.pde_residual(F).is_zero()
            _emit(rows, spec, stream, single={"coefficients": coeffs, "residual_zero": residual_zero, "samples": rows})
            return 0 if residual_zero else 1
        raise UsageError(f"unknown subcommand {sc!r}")
    except (ArithmeticError, ValueError, AssertionError) as exc:
        _report_error(err, spec.output, "evaluation_failed", str(exc))
        return 1


def _report_error(err: TextIO, output: str, kind: str, message: str) -> None:
    if output == "json":
        err.write(dumps({"error": kind, "message": message}) + "\n")
    else:
        err.write(f"umbra: error: {message}\n")


def _output_mode(argv: list[str]) -> str:
    for i, a in enumerate(argv):
        if a == "--output" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--output="):
            return a.split("=", 1)[1]
    return "json"


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        spec = parse_args(argv)
    except UsageError as exc:
        _report_error(sys.stderr, _output_mode(argv), "usage", str(exc))
        return 2
    if spec.out_path:
        with open(spec.out_path, "w", encoding="utf-8", newline="\n") as fh:
            return run_command(spec, fh)
    return run_command(spec)


if __name__ == "__main__":
    sys.exit(main())
