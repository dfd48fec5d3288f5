"""Command-line front end: ``lamcalc <command> [flags]``.

Every command produces a :class:`CommandResult`; ``--json`` prints it as a
single JSON object, otherwise a short human-readable rendering is printed.
Exit codes: 0 ok, 1 error, 2 failed verification.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any

from .algebra import ComplexApprox, LaurentPoly, format_rational, parse_rational
from .errors import LamCalcError
from .lambinom import BasisSpec, lb_expand, lb_general
from .ops import d_lambda_n, i_lambda_n
from .qsymbols import TruncationConfig, big_e_q, e_q, solution_E, solution_e
from .taylor import (
    FAMILIES,
    compare_connection,
    taylor_via_connection,
    taylor_via_system,
)
from .verify import GROUPS, run_verification

EXIT_OK, EXIT_ERROR, EXIT_VERIFY_FAILED = 0, 1, 2
DEFAULT_TOL = "1e-30"


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: dict[str, Any] = field(default_factory=dict)
    message: str = ""
    text: str = ""
    exit_code: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps({"status": self.status, "payload": self.payload, "message": self.message})


def _error(message: str) -> CommandResult:
    return CommandResult("error", {}, message or "error", exit_code=EXIT_ERROR)


def _rationals(values) -> list[str]:
    return [format_rational(v) for v in values]


def _list_text(values) -> str:
    return "[" + ", ".join(_rationals(values)) + "]"


def _rational(text: str):
    try:
        return parse_rational(text)
    except LamCalcError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _poly(text: str) -> LaurentPoly:
    try:
        return LaurentPoly.parse(text)
    except LamCalcError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _poly_result(p: LaurentPoly) -> CommandResult:
    return CommandResult("ok", {"poly": p.to_json(), "text": str(p)}, text=str(p))


def _config(args) -> TruncationConfig:
    return TruncationConfig(precision_digits=args.prec, tol=args.tol)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_expand(args) -> CommandResult:
    return _poly_result(lb_expand(BasisSpec(args.a, args.lam), args.n))


def cmd_dlam(args) -> CommandResult:
    return _poly_result(d_lambda_n(args.poly, args.lam, args.order))


def cmd_ilam(args) -> CommandResult:
    return _poly_result(i_lambda_n(args.poly, args.lam, args.order))


def cmd_taylor(args) -> CommandResult:
    routes = {"system": taylor_via_system, "connection": taylor_via_connection}
    if args.method == "both":
        sys_c = routes["system"](args.poly, args.a, args.lam).coeffs
        conn_c = routes["connection"](args.poly, args.a, args.lam).coeffs
        agree = sys_c == conn_c
        payload = {"coeffs": _rationals(sys_c), "method": "both", "methods_agree": agree}
        text = f"{_list_text(sys_c)}\nmethods_agree: {str(agree).lower()}"
        if not agree:
            payload["connection_coeffs"] = _rationals(conn_c)
            return CommandResult("error", payload, "system and connection routes disagree", text, EXIT_ERROR)
        return CommandResult("ok", payload, text=text)
    coeffs = routes[args.method](args.poly, args.a, args.lam).coeffs
    return CommandResult("ok", {"coeffs": _rationals(coeffs), "method": args.method}, text=_list_text(coeffs))


def cmd_connect(args) -> CommandResult:
    if args.family == "twopoint" and args.b is None:
        return _error("--b is required for --family twopoint")
    rep = compare_connection(args.family, args.n, args.a, args.lam, args.b)
    agree = list(rep.agree)
    payload = {
        "family": args.family,
        "truth": _rationals(rep.truth.coeffs),
        "paper": _rationals(rep.printed),
        "agree": agree,
        "all_agree": all(agree),
        "reconstructs": rep.reconstructs,
    }
    text = "\n".join([
        f"truth: {_list_text(rep.truth.coeffs)}",
        f"paper: {_list_text(rep.printed)}",
        "agree: [" + ", ".join(str(a).lower() for a in agree) + "]",
    ])
    return CommandResult("ok", payload, text=text)


def _need(args, *names):
    missing = [f"--{n.replace('lam', 'lambda')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--expr {args.expr} needs {', '.join(missing)}")


def cmd_eval(args) -> CommandResult:
    cfg = _config(args)
    prec = cfg.precision_digits
    if args.expr == "binomial":
        _need(args, "a", "lam", "alpha", "x")
        alpha = ComplexApprox.of(args.alpha, prec)
        if args.lam <= 0:
            raise UsageError("--expr binomial needs a positive --lambda")
        value = lb_general(BasisSpec(args.a, args.lam), alpha, ComplexApprox.of(args.x, prec), cfg)
    elif args.expr in ("solE", "sole"):
        _need(args, "a", "lam", "x")
        fn = solution_E if args.expr == "solE" else solution_e
        value = fn(args.a, args.lam, ComplexApprox.of(args.x, prec), cfg)
    else:
        _need(args, "z", "q")
        fn = e_q if args.expr == "eq" else big_e_q
        value = fn(ComplexApprox.of(args.z, prec), ComplexApprox.of(args.q, prec), cfg)
    s = value.to_string(prec)
    return CommandResult("ok", {"expr": args.expr, "value": s, "precision_digits": prec}, text=s)


def cmd_verify(args) -> CommandResult:
    report = run_verification(args.suite, args.trials, args.seed, _config(args))
    lines = []
    for s in report.suites:
        if not s.assertable:
            tag = "NOTE"
        else:
            tag = "PASS" if s.failures == 0 else "FAIL"
        lines.append(f"{tag} {s.name} {s.passes}/{s.trials}")
        for note in s.discrepancy_notes:
            lines.append(f"     discrepancy: {note}")
        if s.assertable:
            for ce in s.counterexamples[:3]:
                lines.append(f"     counterexample: {json.dumps(ce)}")
    lines.append(f"verification: {'ok' if report.ok else 'FAILED'}")
    code = EXIT_OK if report.ok else EXIT_VERIFY_FAILED
    status = "ok" if report.ok else "error"
    message = "" if report.ok else "assertable suites failed"
    return CommandResult(status, report.to_json(), message, "\n".join(lines), code)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="print a single JSON object")
    parser.add_argument("--prec", type=int, default=default(None),
                        help="working precision in digits (default 50, env LAMCALC_PREC)")
    parser.add_argument("--tol", default=default(DEFAULT_TOL), help="truncation tolerance (default 1e-30)")
    parser.add_argument("--seed", type=int, default=default(42), help="seed for verify (default 42)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lamcalc", description="Exact lambda-calculus toolkit")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_options(p, suppress=True)
        p.set_defaults(func=fn)
        return p

    p = command("expand", cmd_expand, "expand (x - a)_lambda^n as a Laurent polynomial")
    p.add_argument("--a", type=_rational, default=parse_rational("1"))
    p.add_argument("--lambda", dest="lam", type=_rational, default=parse_rational("2"))
    p.add_argument("--n", type=_nonneg, required=True)

    for name, fn in (("dlam", cmd_dlam), ("ilam", cmd_ilam)):
        p = command(name, fn, f"apply the lambda-{'derivative' if name == 'dlam' else 'integral'}")
        p.add_argument("--poly", type=_poly, required=True)
        p.add_argument("--lambda", dest="lam", type=_rational, required=True)
        p.add_argument("--order", type=_nonneg, default=1)

    p = command("taylor", cmd_taylor, "lambda-Taylor coefficients of f(1/x)")
    p.add_argument("--poly", type=_poly, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--method", choices=("system", "connection", "both"), default="both")

    p = command("connect", cmd_connect, "connection-formula coefficients, exact vs printed")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--b", type=_rational)

    p = command("eval", cmd_eval, "numeric evaluation of infinite-product objects")
    p.add_argument("--expr", choices=("binomial", "solE", "sole", "eq", "Eq"), required=True)
    p.add_argument("--a", type=_rational)
    p.add_argument("--lambda", dest="lam", type=_rational)
    p.add_argument("--alpha")
    p.add_argument("--x")
    p.add_argument("--z")
    p.add_argument("--q")

    p = command("verify", cmd_verify, "run the randomised identity suites")
    p.add_argument("--suite", choices=("all",) + GROUPS, default="all")
    p.add_argument("--trials", type=int, default=100)
    return parser


VALUE_FLAGS = {"--poly", "--a", "--b", "--lambda", "--alpha", "--x", "--z", "--q", "--tol"}


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--poly -1:1`` as ``--poly=-1:1`` so values may start with ``-``."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            value = next(it, None)
            if value is None:
                out.append(tok)
            else:
                out.append(f"{tok}={value}")
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None) -> CommandResult:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        if args.prec is None:
            args.prec = int(os.environ.get("LAMCALC_PREC", "50"))
        return args.func(args)
    except (UsageError, LamCalcError, ValueError, ZeroDivisionError) as exc:
        return _error(str(exc))


def main(argv: list[str] | None = None) -> int:
    json_mode = "--json" in (sys.argv[1:] if argv is None else argv)
    result = run(argv)
    if json_mode:
        print(result.to_json())
    elif result.status == "error" and not result.text:
        print(f"error: {result.message}", file=sys.stderr)
    else:
        print(result.text)
        if result.status == "error":
            print(f"error: {result.message}", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
