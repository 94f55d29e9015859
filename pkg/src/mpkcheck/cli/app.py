"""
Command line surface.

    mpkcheck verify [--n N] [--k K] [--only CHECK,...] [--json OUT] ...
    mpkcheck eval EXPR --sig S2,T,C
    mpkcheck kclass --n N --k K [--j J]
    mpkcheck dump-matrix EXPR --sig T2 [--trunc-N N]
    mpkcheck list-checks

Exit codes: 0 all checks pass, 1 unexpected failure, 2 configuration or
parse error.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from mpkcheck.config.settings import settings
from mpkcheck.config.suite_file import load_suite_config
from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.dsl.parser import parse_expr
from mpkcheck.core.dsl.printer import format_element
from mpkcheck.core.ktheory.ledger import kvec_E, kvec_L
from mpkcheck.core.numeric.backend import TruncationSpec, circle_samples, dump_coo, to_matrix
from mpkcheck.services.registry import REGISTRY, check_names
from mpkcheck.services.suite import build_suite_report, run_suite, write_report
from mpkcheck.utils.error import BaseError, ConfigError, exit_code_for
from mpkcheck.utils.logging import configure_logging
from mpkcheck.version import __version__

logger = logging.getLogger(__name__)


def _names(values: Optional[List[str]]) -> Optional[List[str]]:
    """Flatten repeated and comma separated flag values."""
    if not values:
        return None
    return [item.strip() for value in values for item in value.split(",") if item.strip()]


def _signature(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except ValueError as e:
        raise ConfigError(f"invalid signature '{text}': {e}", details={"signature": text}) from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpkcheck",
        description="Exact verification of multipullback quantum CP^n K-theory identities",
    )
    parser.add_argument("--version", action="version", version=f"mpkcheck {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default from MPK_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the verification suite")
    verify.add_argument("--n", dest="n_max", type=int, help="largest n for the symbolic checks")
    verify.add_argument("--k", dest="k_max", type=int, help="largest k for the witness checks")
    verify.add_argument("--trunc-N", dest="truncation_N", type=int, help="truncation size of the numeric backend")
    verify.add_argument("--tol", dest="tolerance", type=float, help="numeric tolerance")
    verify.add_argument("--seed", type=int, help="seed for samplers and circle points")
    verify.add_argument("--json", dest="output_path", metavar="OUT", help="write the JSON report to OUT")
    verify.add_argument("--only", action="append", metavar="CHECK[,CHECK...]", help="run only these checks")
    verify.add_argument("--expect-fail", action="append", metavar="CHECK",
                        help="failures of CHECK are expected and do not affect the exit code")
    verify.add_argument("--faults", action="store_true", default=None, help="also run the fault catalog")
    verify.add_argument("--suite-file", default=None, help="YAML defaults (default configs/suite.yaml)")
    verify.add_argument("--workers", type=int, default=1, help="threads used to run tasks")

    ev = sub.add_parser("eval", help="parse an expression and print its canonical form")
    ev.add_argument("expr")
    ev.add_argument("--sig", required=True, help="signature such as S2,T,C")
    ev.add_argument("--adjoint", action="store_true", help="print the adjoint instead")

    kc = sub.add_parser("kclass", help="print the K₀ coordinates of [L_k] or [E_k^j]")
    kc.add_argument("--n", type=int, required=True)
    kc.add_argument("--k", type=int, required=True)
    kc.add_argument("--j", type=int, default=None, help="print [E_k^j] instead of [L_k]")

    dm = sub.add_parser("dump-matrix", help="print the truncated matrix of an expression as 'row col re im' lines")
    dm.add_argument("expr")
    dm.add_argument("--sig", required=True, help="signature without sphere blocks, or use --lift")
    dm.add_argument("--trunc-N", dest="truncation_N", type=int, default=8)
    dm.add_argument("--lift", action="store_true", help="use the Toeplitz representative of sphere blocks")
    dm.add_argument("--sample", type=int, default=0, help="index of the circle sample")
    dm.add_argument("--seed", type=int, default=42)

    sub.add_parser("list-checks", help="list the registered checks")
    return parser


# ───────── commands ─────────
def cmd_verify(args: argparse.Namespace) -> int:
    overrides: Dict[str, Any] = {
        "n_max": args.n_max,
        "k_max": args.k_max,
        "truncation_N": args.truncation_N,
        "tolerance": args.tolerance,
        "seed": args.seed,
        "output_path": args.output_path,
        "checks": _names(args.only),
        "expect_fail": _names(args.expect_fail),
        "include_faults": args.faults,
    }
    config = load_suite_config(args.suite_file, overrides)
    reports = run_suite(config, workers=args.workers)
    document = build_suite_report(config, reports)
    if config.output_path:
        write_report(document, config.output_path, settings.suite.json_indent)
        summary = document.summary
        for report in reports:
            if report.status == "fail":
                flag = " (expected)" if report.expected_fail else ""
                print(f"FAIL{flag} {report.check} {json.dumps(report.parameters, sort_keys=True, default=str)}")
        print(f"{summary.passed} passed, {summary.failed} failed, {summary.skipped} skipped, "
              f"{summary.expected_failures} expected failure(s)")
    else:
        print(document.to_json(settings.suite.json_indent))
    return document.exit_code


def cmd_eval(args: argparse.Namespace) -> int:
    x = parse_expr(args.expr, _signature(args.sig))
    print(format_element(x.adjoint() if args.adjoint else x))
    return 0


def cmd_kclass(args: argparse.Namespace) -> int:
    v = kvec_L(args.n, args.k) if args.j is None else kvec_E(args.n, args.j, args.k)
    print(json.dumps(v.to_json()))
    return 0


def cmd_dump_matrix(args: argparse.Namespace) -> int:
    x = parse_expr(args.expr, _signature(args.sig))
    if args.lift:
        x = x.lift()
    spec = TruncationSpec.seeded(args.truncation_N, seed=args.seed)
    samples = circle_samples(x.signature, spec)
    rep = to_matrix(x, spec, samples[args.sample % len(samples)])
    print(f"# shape {rep.shape[0]}x{rep.shape[1]} N={spec.N} sample={[str(z) for z in rep.sample]}")
    text = dump_coo(rep)
    if text:
        print(text)
    return 0


def cmd_list_checks(args: argparse.Namespace) -> int:
    for name in check_names():
        spec = REGISTRY[name]
        marker = " [fault]" if spec.fault else ""
        print(f"{name}{marker}: {spec.summary}")
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "eval": cmd_eval,
    "kclass": cmd_kclass,
    "dump-matrix": cmd_dump_matrix,
    "list-checks": cmd_list_checks,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except BaseError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        print(json.dumps({"error": e.to_dict()}, default=str), file=sys.stderr)
        return exit_code_for(e)
    except Exception as e:
        logger.exception(f"Unexpected error in '{args.command}': {e}")
        return exit_code_for(e)
