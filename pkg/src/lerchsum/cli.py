"""Command-line interface: function evaluation and identity verification.

Exit codes are a stable contract:
  0  success
  1  verification failure (some point did not pass)
  2  usage, configuration, or domain error
  3  numerical convergence error
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .functions import (
    LerchParams,
    digamma,
    harmonic,
    hurwitz_zeta,
    lerch_phi,
    lerch_phi_integral,
    log_gamma,
    polylog,
    stieltjes_gamma1,
)
from .identities import UnknownIdentityError, get_identity, list_identities
from .numerics import ConvergenceError, DomainError, PrecisionPolicy
from .report import write_report
from .verifier import (
    DEFAULT_SEED,
    SuiteOverride,
    SuiteReport,
    default_strategy,
    run_suite,
)

__all__ = ["main"]

_EVAL_SIGNATURES = {
    "phi": ("z", "s", "v"),
    "phi-integral": ("z", "s", "v"),
    "zeta": ("s", "a"),
    "polylog": ("s", "z"),
    "loggamma": ("z",),
    "digamma": ("z",),
    "harmonic": ("z",),
    "stieltjes1": ("a",),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lerchsum",
        description="Evaluate Hurwitz-Lerch-family special functions and "
                    "verify the finite-sum identity registry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one special function")
    pe.add_argument("function", choices=sorted(_EVAL_SIGNATURES))
    for name in ("z", "s", "v", "a"):
        pe.add_argument(f"--{name}", nargs=2, type=float, metavar=("RE", "IM"))
    pe.add_argument("--tol-rel", type=float, default=1e-10)
    pe.add_argument("--tol-abs", type=float, default=1e-12)
    pe.add_argument("--max-terms", type=int, default=10**6)

    def common(p):
        p.add_argument("--count", type=int, default=100)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--tol-rel", type=float, default=None,
                       help="override tolerance for non-absolute-mode identities")
        p.add_argument("--tol-abs", type=float, default=None,
                       help="override tolerance for absolute-mode identities")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="report file path")

    pv = sub.add_parser("verify", help="verify a single identity")
    pv.add_argument("id")
    common(pv)

    ps = sub.add_parser("suite", help="verify the whole registry")
    ps.add_argument("--filter", default=None,
                    help="comma-separated identity ids to run")
    common(ps)
    return parser


def _policy_from(args) -> PrecisionPolicy:
    return PrecisionPolicy(rel_tol=args.tol_rel, abs_tol=args.tol_abs,
                           max_terms=args.max_terms)


def _cmd_eval(args) -> int:
    signature = _EVAL_SIGNATURES[args.function]
    values = {}
    for name in signature:
        raw = getattr(args, name, None)
        if raw is None:
            print(f"eval {args.function}: missing --{name} RE IM", file=sys.stderr)
            return 2
        values[name] = complex(raw[0], raw[1])
    policy = _policy_from(args)
    fn = args.function
    if fn == "phi":
        result = lerch_phi(LerchParams(values["z"], values["s"], values["v"]), policy)
    elif fn == "phi-integral":
        result = lerch_phi_integral(
            LerchParams(values["z"], values["s"], values["v"]), policy)
    elif fn == "zeta":
        result = hurwitz_zeta(values["s"], values["a"], policy)
    elif fn == "polylog":
        result = polylog(values["s"], values["z"], policy)
    elif fn == "loggamma":
        result = log_gamma(values["z"])
    elif fn == "digamma":
        result = digamma(values["z"])
    elif fn == "harmonic":
        result = harmonic(values["z"])
    else:
        result = stieltjes_gamma1(values["a"], policy)
    print(f"{result.real:.17g}\t{result.imag:.17g}")
    return 0


def _tol_override(spec_id: str, args) -> Optional[float]:
    mode = get_identity(spec_id).compare_mode
    if mode == "absolute":
        return args.tol_abs
    return args.tol_rel


def _validate_tols(args) -> None:
    for name in ("tol_rel", "tol_abs"):
        value = getattr(args, name)
        if value is not None and not value > 0:
            raise DomainError(f"--{name.replace('_', '-')} must be positive")


def _print_suite_table(report: SuiteReport) -> None:
    header = f"{'id':8} {'title':22} {'points':>6} {'pass':>9} {'worst_rel':>12} {'mode':>10}"
    print(header)
    for row in report.rows:
        rate = f"{row.passed}/{row.points}"
        worst = "-" if row.worst_rel_err is None else f"{row.worst_rel_err:.3e}"
        print(f"{row.identity_id:8} {row.title:22} {row.points:>6} {rate:>9} "
              f"{worst:>12} {row.mode:>10}")


def _cmd_verify(args) -> int:
    _validate_tols(args)
    spec = get_identity(args.id)
    policy = PrecisionPolicy()
    override = SuiteOverride(
        strategy=default_strategy(spec.id, count=args.count, seed=args.seed),
        tol=_tol_override(spec.id, args),
    )
    report = run_suite(policy, overrides={spec.id: override}, count=args.count,
                       seed=args.seed, jobs=args.jobs, ids=[spec.id])
    out = args.out or f"verify_report.{args.format}"
    write_report(report, out, args.format)
    row = report.rows[0]
    verdict = "PASS" if row.all_passed else "FAIL"
    worst = "-" if row.worst_rel_err is None else f"{row.worst_rel_err:.3e}"
    print(f"{row.identity_id} {verdict} {row.passed}/{row.points} worst_rel={worst}")
    return 0 if row.all_passed else 1


def _cmd_suite(args) -> int:
    _validate_tols(args)
    ids = None
    if args.filter:
        ids = [token.strip() for token in args.filter.split(",") if token.strip()]
        for identity_id in ids:
            get_identity(identity_id)
    overrides = {}
    if args.tol_rel is not None or args.tol_abs is not None:
        for spec in list_identities():
            if ids is not None and spec.id not in ids:
                continue
            tol = _tol_override(spec.id, args)
            if tol is not None:
                overrides[spec.id] = SuiteOverride(tol=tol)
    report = run_suite(PrecisionPolicy(), overrides=overrides, count=args.count,
                       seed=args.seed, jobs=args.jobs, ids=ids)
    out = args.out or f"suite_report.{args.format}"
    write_report(report, out, args.format)
    _print_suite_table(report)
    return 0 if report.all_passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_suite(args)
    except UnknownIdentityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, OverflowError) as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
