"""Command-line front end.

Probabilities are computed in natural log and printed as log10 with 10
significant digits; the log of an exact zero is printed as ``-inf``.
Exit status: 0 success, 2 input error, 1 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from decimal import Decimal, InvalidOperation

from . import __version__
from .diagnostics import (
    DEFAULT_LADDER,
    DEFAULT_M,
    DEFAULT_STEP,
    all_reports,
)
from .errors import ContractError, DomainError, RangeError
from .mc_sim import RNG_NAME, estimate_tail
from .normalization import make_norm
from .parallel import resolve_workers
from .rate_set import ess_inf_rate, parse_set
from .tail_approx import (
    compare_grid,
    log_prob_ldp,
    log_prob_set_exact,
    log_tail_exact,
    log_tail_gumbel,
    log_tail_ldp,
    make_grid,
)

LN10 = math.log(10.0)
COMPARE_HEADER = ("x", "log10_exact", "log10_gumbel", "log10_ldp")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# ---------------------------------------------------------------------------
# formatting


def fmt(v: float) -> str:
    """10 significant digits; infinities spelled ``inf`` / ``-inf``."""
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.10g}"


def _json_num(v):
    if isinstance(v, int):
        return v
    return float(fmt(v)) if math.isfinite(v) else fmt(v)


def _log10(v: float) -> float:
    return v / LN10


def _emit_csv(out, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    out.write(buf.getvalue())


def _emit_json(out, obj):
    out.write(json.dumps(obj, indent=2) + "\n")


# ---------------------------------------------------------------------------
# argument types


def _int_arg(text: str) -> int:
    try:
        value = Decimal(text.replace("_", ""))
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not value.is_finite() or value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _n_arg(text: str) -> int:
    n = _int_arg(text)
    if n < 2:
        raise argparse.ArgumentTypeError(f"n must be >= 2, got {n}")
    return n


def _float_arg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def _grid_arg(text: str) -> tuple[float, float, float]:
    pieces = text.split(":")
    if len(pieces) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:step, got {text!r}")
    lo, hi, step = (_float_arg(p) for p in pieces)
    if step <= 0:
        raise argparse.ArgumentTypeError("grid step must be positive")
    if hi < lo:
        raise argparse.ArgumentTypeError(f"grid is not ascending: {text!r}")
    return lo, hi, step


def _ladder_arg(text: str) -> tuple[int, ...]:
    ladder = tuple(_n_arg(p) for p in text.split(",") if p.strip())
    if not ladder:
        raise argparse.ArgumentTypeError("ladder must not be empty")
    return ladder


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default: csv, json for diagnose)")
    common.add_argument("--threads", type=_int_arg, default=None,
                        help="worker count (capped by $GEXTREME_THREADS)")

    parser = _Parser(prog="gextreme", description="Tail probabilities of Gaussian maxima.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tail", parents=[common], help="exact, Gumbel and LDP tails P(Z_n > x)")
    p.add_argument("n", type=_n_arg)
    p.add_argument("x", type=_float_arg)

    p = sub.add_parser("prob-set", parents=[common], help="exact and LDP P(Z_n in SET)")
    p.add_argument("n", type=_n_arg)
    p.add_argument("set", metavar="SET")

    p = sub.add_parser("rate", parents=[common], help="essential infimum of the rate over SET")
    p.add_argument("set", metavar="SET")

    p = sub.add_parser("compare", parents=[common], help="tail comparison grid as CSV")
    p.add_argument("n", type=_n_arg)
    p.add_argument("--grid", type=_grid_arg, default=(0.0, 5.0, 0.05), metavar="LO:HI:STEP")

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate of P(Z_n > x)")
    p.add_argument("n", type=_n_arg)
    p.add_argument("x", type=_float_arg)
    p.add_argument("samples", type=_int_arg)
    p.add_argument("seed", type=_int_arg)

    p = sub.add_parser("diagnose", parents=[common], help="convergence and inequality reports")
    p.add_argument("--ladder", type=_ladder_arg, default=DEFAULT_LADDER)
    p.add_argument("--M", dest="M", type=_float_arg, default=DEFAULT_M)
    p.add_argument("--step", type=_float_arg, default=DEFAULT_STEP)
    return parser


# ---------------------------------------------------------------------------
# commands


def _cmd_tail(args, out):
    if args.x < 0:
        raise DomainError("x must be >= 0")
    p = make_norm(args.n)
    row = (
        args.x,
        _log10(log_tail_exact(p, args.x)),
        _log10(log_tail_gumbel(p, args.x)),
        _log10(log_tail_ldp(p, args.x)),
    )
    if args.format == "json":
        _emit_json(out, {"n": args.n, **{k: _json_num(v) for k, v in zip(COMPARE_HEADER, row)}})
    else:
        _emit_csv(out, COMPARE_HEADER, [row])


def _cmd_prob_set(args, out):
    p = make_norm(args.n)
    a = parse_set(args.set)
    values = {
        "log10_exact": _log10(log_prob_set_exact(p, a)),
        "log10_ldp": _log10(log_prob_ldp(p, a)),
        "rate": ess_inf_rate(a),
    }
    if args.format == "json":
        _emit_json(out, {"n": args.n, "set": str(a), **{k: _json_num(v) for k, v in values.items()}})
    else:
        _emit_csv(out, list(values), [list(values.values())])


def _cmd_rate(args, out):
    a = parse_set(args.set)
    value = ess_inf_rate(a)
    if args.format == "json":
        _emit_json(out, {"set": str(a), "rate": _json_num(value)})
    else:
        out.write(fmt(value) + "\n")


def _cmd_compare(args, out):
    lo, hi, step = args.grid
    if lo < 0:
        raise DomainError("grid must lie in [0, inf)")
    p = make_norm(args.n)
    rows = compare_grid(p, make_grid(lo, hi, step), workers=resolve_workers(args.threads))
    table = [
        (r.x, _log10(r.log_exact), _log10(r.log_gumbel), _log10(r.log_ldp)) for r in rows
    ]
    if args.format == "json":
        _emit_json(out, [{k: _json_num(v) for k, v in zip(COMPARE_HEADER, row)} for row in table])
    else:
        _emit_csv(out, COMPARE_HEADER, table)


def _cmd_simulate(args, out):
    p = make_norm(args.n)
    est = estimate_tail(p, args.x, args.samples, args.seed, workers=resolve_workers(args.threads))
    record = {
        "n": est.n,
        "x": est.x,
        "samples": est.samples,
        "hits": est.hits,
        "log10_p_hat": _log10(est.log_p_hat),
        "log10_ci_lo": _log10(est.ci_lo),
        "log10_ci_hi": _log10(est.ci_hi),
        "seed": est.seed,
    }
    if args.format == "json":
        _emit_json(out, {**{k: _json_num(v) for k, v in record.items()}, "rng": RNG_NAME})
    else:
        _emit_csv(out, [*record, "rng"], [[*record.values(), RNG_NAME]])


def _cmd_diagnose(args, out):
    reports = all_reports(n_ladder=args.ladder, M=args.M, grid_step=args.step)
    if args.format == "csv":
        rows = [(r.label, n, v) for r in reports for n, v in zip(r.ladder, r.values)]
        _emit_csv(out, ("label", "n", "value"), rows)
        return
    payload = []
    for r in reports:
        d = r.to_dict()
        d["values"] = [_json_num(v) for v in d["values"]]
        d["final_value"] = _json_num(d["final_value"])
        payload.append(d)
    _emit_json(out, payload)


COMMANDS = {
    "tail": _cmd_tail,
    "prob-set": _cmd_prob_set,
    "rate": _cmd_rate,
    "compare": _cmd_compare,
    "simulate": _cmd_simulate,
    "diagnose": _cmd_diagnose,
}


def run(argv=None, out=None, err=None) -> int:
    """Parse ``argv`` and run one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.format is None:
            args.format = "json" if args.command == "diagnose" else "csv"
        COMMANDS[args.command](args, out)
    except (InputError, DomainError, ContractError, RangeError) as exc:
        err.write(f"gextreme: error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001
        err.write(f"gextreme: internal error: {type(exc).__name__}: {exc}\n")
        return 1
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
