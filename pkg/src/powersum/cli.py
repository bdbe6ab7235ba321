"""Command-line frontend.

Subcommands: singer, verify, feasibility, profile, recover, optimize,
search.  Results go to stdout, diagnostics to stderr.  JSON output uses a
fixed key order and 12-significant-digit floats so identical invocations are
byte-identical.  Exit codes: 0 for success / Found / Exists, 1 for
NoneExists / NotMinimizer / Excluded, 2 for invalid domain input, 64 for
usage errors.  POWERSUM_SEED provides the seed when --seed is absent.
"""

from __future__ import annotations

import argparse
import csv as csv_module
import io
import json
import math
import os
import sys
from math import isqrt
from pathlib import Path

import numpy as np

from .gf import DegreeOutOfRangeError, NotPrimeError
from .minimax import OptimizerConfig, minimize
from .pds import (
    DEFAULT_SEARCH_BUDGET,
    InvalidPdsError,
    NotPrimePowerError,
    OrderTooLargeError,
    exhaustive_search,
    feasibility,
    singer_construct,
    verify,
)
from .sums import (
    NuOutOfRangeError,
    RecoveryStatus,
    UnimodularTuple,
    fabrykowski_tuple,
    power_sums,
    recover_structure,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64

_DOMAIN_ERRORS = (NotPrimeError, DegreeOutOfRangeError, NotPrimePowerError,
                  OrderTooLargeError, InvalidPdsError, NuOutOfRangeError,
                  ValueError, OSError)


class CliParser(argparse.ArgumentParser):
    """argparse with the conventional 64 exit code for usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# Deterministic rendering
# ---------------------------------------------------------------------------


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value in output: {x}")
    return format(x, ".12g")


def render_json(value, indent: int = 0) -> str:
    """JSON with insertion-ordered keys and fixed float formatting."""
    pad = "  " * indent
    child = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = (f"{child}{json.dumps(str(k))}: {render_json(v, indent + 1)}"
                 for k, v in value.items())
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        rendered = [render_json(v, indent + 1) for v in value]
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            return "[" + ", ".join(rendered) + "]"
        return ("[\n" + ",\n".join(child + r for r in rendered) + f"\n{pad}]")
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot render {type(value)!r}")


def emit_json(record: dict) -> None:
    sys.stdout.write(render_json(record) + "\n")


def emit_human(lines) -> None:
    for line in lines:
        sys.stdout.write(line + "\n")


# ---------------------------------------------------------------------------
# Shared argument helpers
# ---------------------------------------------------------------------------


def residue_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad residue list {text!r}") from exc


def beta_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad beta list {text!r}") from exc


def resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("POWERSUM_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"POWERSUM_SEED is not an integer: {env!r}")
    return 0


def order_from_modulus(m: int) -> int:
    """Invert m = q^2 + q + 1; rejects moduli not of that form."""
    disc = 4 * m - 3
    root = isqrt(disc)
    if root * root != disc or (root - 1) % 2 != 0:
        raise ValueError(f"modulus {m} is not of the form q^2+q+1")
    return (root - 1) // 2


def load_tuple_file(path: str) -> UnimodularTuple:
    """Tuple input: the JSON record, or CSV with a theta_turns header."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        record = json.loads(text)
        if "thetas" not in record:
            raise ValueError(f"{path}: tuple JSON needs a 'thetas' field")
        return UnimodularTuple.from_record(record)
    rows = list(csv_module.reader(io.StringIO(text)))
    if not rows or [h.strip() for h in rows[0]][:1] != ["theta_turns"]:
        raise ValueError(f"{path}: CSV tuples need a 'theta_turns' header")
    thetas = [float(r[0]) for r in rows[1:] if r and r[0].strip() != ""]
    return UnimodularTuple(tuple(thetas))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_singer(args) -> int:
    pds = singer_construct(args.q)
    check = verify(pds.residues, pds.q)
    if not check.valid:  # construction is self-checking; this is belt+braces
        raise ArithmeticError(f"singer output failed verification: {check}")
    if args.format == "human":
        emit_human([f"q={pds.q} m={pds.m}",
                    "residues: " + ",".join(map(str, pds.residues))])
    else:
        emit_json(pds.to_record())
    return EXIT_OK


def cmd_verify(args) -> int:
    q = args.q if args.q is not None else order_from_modulus(args.modulus)
    result = verify(args.set, q)
    record = {
        "q": q,
        "m": q * q + q + 1,
        "valid": result.valid,
        "reason": result.reason,
        "witness": result.witness,
    }
    if args.format == "human":
        verdict = "valid" if result.valid else f"invalid ({result.reason}, witness {result.witness})"
        emit_human([f"q={q} set={','.join(map(str, args.set))}: {verdict}"])
    else:
        emit_json(record)
    return EXIT_OK if result.valid else EXIT_NEGATIVE


def cmd_feasibility(args) -> int:
    report = feasibility(args.order, search_budget=args.budget)
    if args.format == "human":
        lines = [f"order {report.order}: {report.verdict}"]
        if report.reasons:
            lines.append("reasons: " + ", ".join(report.reasons))
        lines.append(f"exhaustive: {report.exhaustive_result}")
        if report.witness:
            lines.append("witness: " + ",".join(map(str, report.witness.residues)))
        emit_human(lines)
    else:
        emit_json(report.to_record())
    return EXIT_NEGATIVE if report.verdict == "Excluded" else EXIT_OK


def _profile_source(args) -> UnimodularTuple:
    if args.tuple_file is not None:
        return load_tuple_file(args.tuple_file)
    if args.from_pds is not None:
        return fabrykowski_tuple(singer_construct(args.from_pds),
                                 alpha_turns=args.alpha)
    rng = np.random.default_rng(resolve_seed(args))
    thetas = rng.uniform(0.0, 1.0, args.random)
    return UnimodularTuple(tuple(float(x) for x in thetas),
                           alpha_turns=args.alpha)


def cmd_profile(args) -> int:
    t = _profile_source(args)
    profile = power_sums(t, nu_max=args.nu_max)
    rows = list(zip(range(1, len(profile.abs_values) + 1),
                    profile.abs_values, profile.epsilons))
    if args.format == "csv":
        sys.stdout.write("nu,abs,epsilon\n")
        for nu, a, e in rows:
            sys.stdout.write(f"{nu},{format_float(a)},{format_float(e)}\n")
    elif args.format == "human":
        emit_human([f"n={profile.n} m={profile.m} max|S|={format_float(profile.max_abs)}"]
                   + [f"  nu={nu:4d}  |S|={format_float(a):18s} eps={format_float(e)}"
                      for nu, a, e in rows])
    else:
        emit_json({
            "n": profile.n,
            "m": profile.m,
            "alpha_turns": t.alpha_turns,
            "max_abs": profile.max_abs,
            "rows": [[nu, a, e] for nu, a, e in rows],
        })
    return EXIT_OK


def cmd_recover(args) -> int:
    t = load_tuple_file(args.tuple_file)
    result = recover_structure(t, tol=args.tol)
    if args.format == "human":
        lines = [f"status: {result.status.value}",
                 f"residual: {format_float(result.residual)}",
                 f"profile deviation: {format_float(result.profile_deviation)}"]
        if result.pds:
            lines.append("recovered set: " + ",".join(map(str, result.pds.residues)))
        emit_human(lines)
    else:
        emit_json(result.to_record())
    return EXIT_OK if result.status is RecoveryStatus.IS_MINIMIZER else EXIT_NEGATIVE


def cmd_optimize(args) -> int:
    config = OptimizerConfig(n=args.n, restarts=args.restarts,
                             max_iters=args.max_iters, seed=resolve_seed(args),
                             smoothing_betas=args.betas,
                             polish_tol=args.polish_tol)
    trace_rows: list[tuple[int, float, float]] = []
    sink = (lambda _r, row: trace_rows.append(row)) if args.trace else None
    report = minimize(config, workers=args.parallel, trace_sink=sink)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("iter,beta,value\n")
            for it, beta, value in trace_rows:
                fh.write(f"{it},{format_float(beta)},{format_float(value)}\n")
    if args.format == "human":
        emit_human([
            f"n={args.n} restarts={args.restarts} seed={config.seed}",
            f"best value: {format_float(report.best_value)}",
            f"gap to sqrt(n-1): {format_float(report.gap_to_bound)}",
            f"recovered: {report.recovered.status.value}",
        ])
    else:
        emit_json(report.to_record())
    return (EXIT_OK if report.recovered.status is RecoveryStatus.IS_MINIMIZER
            else EXIT_NEGATIVE)


def cmd_search(args) -> int:
    result = exhaustive_search(args.order, budget=args.budget,
                               workers=args.parallel)
    record = {
        "order": args.order,
        "m": args.order * args.order + args.order + 1,
        "status": result.status,
        "residues": list(result.pds.residues) if result.pds else None,
        "nodes": result.nodes,
    }
    if args.format == "human":
        lines = [f"order {args.order}: {result.status} ({result.nodes} nodes)"]
        if result.pds:
            lines.append("residues: " + ",".join(map(str, result.pds.residues)))
        emit_human(lines)
    else:
        emit_json(record)
    return EXIT_NEGATIVE if result.status == "NoneExists" else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_format(parser, default="json", csv_allowed=False):
    choices = ["json", "human"] + (["csv"] if csv_allowed else [])
    parser.add_argument("--format", choices=sorted(choices), default=default,
                        help=f"output format (default {default})")


def build_parser() -> CliParser:
    parser = CliParser(prog="powersum",
                       description="Perfect difference sets and power-sum "
                                   "minimax profiles")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("singer", help="Singer difference set of prime-power order")
    p.add_argument("--q", type=int, required=True, help="order (prime power)")
    _add_format(p)
    p.set_defaults(func=cmd_singer)

    p = sub.add_parser("verify", help="check the perfect-difference property")
    p.add_argument("--set", type=residue_list, required=True,
                   help="comma-separated residues")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--q", type=int, help="order")
    group.add_argument("--modulus", type=int, help="modulus q^2+q+1")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("feasibility", help="existence tests for an order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET,
                   help="search node budget")
    _add_format(p)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("profile", help="power-sum profile |S(nu)|")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--tuple-file", help="JSON tuple or CSV with theta_turns")
    source.add_argument("--from-pds", type=int, metavar="Q",
                        help="lattice tuple of the Singer set of order Q")
    source.add_argument("--random", type=int, metavar="N",
                        help="seeded uniform random tuple of size N")
    p.add_argument("--alpha", type=float, default=0.0, help="global phase in turns")
    p.add_argument("--nu-max", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _add_format(p, default="csv", csv_allowed=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("recover", help="extract difference-set structure")
    p.add_argument("--tuple-file", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_format(p)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("optimize", help="multi-start minimax optimization")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--max-iters", type=int, default=600)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--betas", type=beta_list, default=(1.0, 4.0, 16.0, 64.0),
                   help="comma-separated smoothing schedule")
    p.add_argument("--polish-tol", type=float, default=1e-10)
    p.add_argument("--parallel", type=int, default=1, metavar="WORKERS")
    p.add_argument("--trace", default=None, metavar="FILE",
                   help="write per-iteration CSV (iter,beta,value)")
    _add_format(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("search", help="exhaustive difference-set search")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--parallel", type=int, default=1, metavar="WORKERS")
    _add_format(p)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"powersum: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
