"""Command-line front end.

Exit status: 0 on success, 1 on usage errors or malformed input, 2 when a
run finished but a checked mathematical claim failed.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

from . import __version__
from .bounds import BOUNDS, bound_report, thm32_report
from .chains import lym_audit, owner_counts
from .exceptions import ContractError, DomainError, FamilyFormatError
from .extremal import canonical_family, check_extremal_2chain, conjectured_min, saturated_example
from .familyio import format_family, read_family, write_family
from .lattice import MAX_N, SetFamily, format_set, sperner_bound
from .oracle import (
    BRANCH_AND_BOUND_MAX_N,
    EXHAUSTIVE_MAX_N,
    branch_and_bound_min,
    verify_conjecture,
    verify_iff_characterization,
)
from .report import FORMATS, emit_table
from .shifting import minimize

log = logging.getLogger("chainlab")

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for failed checks here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve_threads(value: int | None) -> int:
    if value is not None:
        threads = value
    elif os.environ.get("CHAINLAB_THREADS"):
        try:
            threads = int(os.environ["CHAINLAB_THREADS"])
        except ValueError:
            raise UsageError("CHAINLAB_THREADS must be an integer") from None
    else:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise UsageError("thread count must be positive")
    return threads


def random_family(n: int, s: int, seed: int) -> SetFamily:
    """Uniform s-subset of the power set of [n]; fully determined by seed."""
    if not 1 <= n <= MAX_N:
        raise DomainError(f"n must be in [1, {MAX_N}]")
    if not 0 <= s <= 1 << n:
        raise DomainError(f"s={s} outside [0, {1 << n}]")
    return SetFamily(n, random.Random(seed).sample(range(1 << n), s))


def _load_family(args) -> SetFamily:
    if args.family:
        return read_family(args.family)
    if args.n is None or args.s is None:
        raise UsageError("give --family, or --n and --s for a seeded random family")
    return random_family(args.n, args.s, args.seed)


def _require(args, *names):
    missing = ["--" + nm.replace("_", "-") for nm in names if getattr(args, nm) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_count(args) -> tuple[str, int]:
    _require(args, "k")
    fam = _load_family(args)
    rep = owner_counts(fam, args.k)
    if args.format == "json":
        return _dump(rep.to_dict()), EXIT_OK
    if args.format == "csv":
        return f"n,k,s,total,c1,c2\n{fam.n},{args.k},{len(fam)},{rep.total},{rep.c1},{rep.c2}\n", EXIT_OK
    return f"{rep.total}\n", EXIT_OK


def cmd_bound(args) -> tuple[str, int]:
    _require(args, "name")
    if args.name == "thm32":
        _require(args, "k")
        rep = thm32_report(_load_family(args), args.k)
    else:
        params = {nm: getattr(args, nm) for nm in ("n", "k", "s", "t", "t1", "t2", "ell")}
        rep = bound_report(args.name, **{key: v for key, v in params.items() if v is not None})
    if args.format == "text":
        return f"{rep.value}\n", EXIT_OK
    return emit_table([rep], args.format), EXIT_OK


def cmd_construct(args) -> tuple[str, int]:
    if args.kind == "saturated":
        _require(args, "m")
        fam = saturated_example(args.m)
    else:
        _require(args, "n", "s")
        fam = canonical_family(args.n, args.s)
    if args.out:
        write_family(fam, args.out)
    if args.format == "json":
        body = {"kind": args.kind, "n": fam.n, "s": len(fam), "family": format_family(fam)}
        if args.k is not None:
            body["count"] = str(owner_counts(fam, args.k).total)
        return _dump(body), EXIT_OK
    return format_family(fam), EXIT_OK


def cmd_check(args) -> tuple[str, int]:
    cert = check_extremal_2chain(_load_family(args))
    if args.format == "json":
        return _dump(cert.to_dict()), EXIT_OK
    lines = [f"satisfied {str(cert.satisfied).lower()}", f"r {cert.r}"]
    for i, (app, ok) in enumerate(zip(cert.applicable, cert.condition_results), start=1):
        lines.append(f"condition {i} {'n/a' if not app else str(ok).lower()}")
    lines += [f"violating {format_set(m)}" for m in cert.violating_sets]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_minimize(args) -> tuple[str, int]:
    _require(args, "k")
    fam = _load_family(args)
    final, trace = minimize(fam, args.k, args.max_steps)
    if args.out:
        write_family(final, args.out)
    if args.format == "json":
        body = trace.to_dict()
        body["family"] = format_family(final)
        return _dump(body), EXIT_OK
    counts = " ".join(str(c) for c in trace.counts())
    return f"steps {len(trace.steps)}\ncounts {counts}\n" + format_family(final), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    _require(args, "n", "k")
    n, k = args.n, args.k
    lo = 0 if args.s_min is None else args.s_min
    hi = (1 << n) if args.s_max is None else args.s_max
    if not 0 <= lo <= hi <= 1 << n:
        raise UsageError(f"need 0 <= s-min <= s-max <= {1 << n}")
    s_values = range(lo, hi + 1)

    if args.iff:
        if n > EXHAUSTIVE_MAX_N:
            raise UsageError(f"--iff needs n <= {EXHAUSTIVE_MAX_N}")
        reports = [verify_iff_characterization(n, s) for s in s_values if s >= sperner_bound(n)]
        ok = all(r.ok for r in reports)
        if args.format == "json":
            return _dump([r.to_dict() for r in reports]), EXIT_OK if ok else EXIT_FAILED
        lines = [f"s={r.s} optimal={r.optimal} certified={r.certified} {'ok' if r.ok else 'FAIL'}"
                 for r in reports]
        return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAILED

    if n <= EXHAUSTIVE_MAX_N:
        report = verify_conjecture(n, k, s_values)
        ok = report.ok
        if args.format == "json":
            return _dump(report.to_dict()), EXIT_OK if ok else EXIT_FAILED
        lines = [f"s={r.s} oracle={r.oracle_min} conjectured={r.conjectured} {'ok' if r.ok else 'FAIL'}"
                 for r in report.rows]
        return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAILED

    if n > BRANCH_AND_BOUND_MAX_N:
        raise UsageError(f"verify needs n <= {BRANCH_AND_BOUND_MAX_N}")
    results = [branch_and_bound_min(n, s, k, args.time_budget) for s in s_values]
    # an unfinished search certifies nothing, so it counts as a failed check
    ok = all(r.complete and r.minimum == conjectured_min(n, r.s, k) for r in results)
    if args.format == "text":
        lines = [f"s={r.s} oracle={r.minimum} conjectured={conjectured_min(n, r.s, k)} "
                 f"{'complete' if r.complete else 'incomplete'}" for r in results]
        return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAILED
    return emit_table(results, args.format), EXIT_OK if ok else EXIT_FAILED


def cmd_audit(args) -> tuple[str, int]:
    _require(args, "k")
    audit = lym_audit(_load_family(args), args.k)
    ok = all(audit.holds) and audit.identity_ok is not False
    if args.format == "json":
        return _dump(audit.to_dict()), EXIT_OK if ok else EXIT_FAILED
    lines = [f"set_weight_sum {audit.set_weight_sum}"]
    if audit.prefix_count is not None:
        lines.append(f"prefix_count {audit.prefix_count}")
    lines += [f"margin {i} {m}" for i, m in enumerate(audit.margins, start=1)]
    return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "count": cmd_count,
    "bound": cmd_bound,
    "construct": cmd_construct,
    "check": cmd_check,
    "minimize": cmd_minimize,
    "verify": cmd_verify,
    "audit": cmd_audit,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--s", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--t1", type=int)
    common.add_argument("--t2", type=int)
    common.add_argument("--family", help="family file (n=<int> header, one set per line)")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for random families")
    common.add_argument("--threads", type=int, help="defaults to $CHAINLAB_THREADS, then the CPU count")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="chainlab", description="Exact k-chain counting in families of subsets.")
    parser.add_argument("--version", action="version", version=f"chainlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("count", parents=[common], help="count k-chains and their owner split")
    p = sub.add_parser("bound", parents=[common], help="evaluate a named lower bound")
    p.add_argument("--name", choices=sorted([*BOUNDS, "thm32"]))
    p.add_argument("--ell", type=int)
    p = sub.add_parser("construct", parents=[common], help="emit a centered or saturated family")
    p.add_argument("--kind", choices=("canonical", "saturated"), default="canonical")
    p.add_argument("--m", type=int)
    p.add_argument("--out")
    sub.add_parser("check", parents=[common], help="test the 2-chain extremality conditions")
    p = sub.add_parser("minimize", parents=[common], help="shifting local search")
    p.add_argument("--max-steps", type=int, default=100)
    p.add_argument("--out")
    p = sub.add_parser("verify", parents=[common], help="compare oracle minima with centered families")
    p.add_argument("--s-min", type=int)
    p.add_argument("--s-max", type=int)
    p.add_argument("--iff", action="store_true", help="check the 2-chain characterization instead")
    p.add_argument("--time-budget", type=float, default=60.0)
    sub.add_parser("audit", parents=[common], help="LYM identity and inequality audit")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and bad flags
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.threads = resolve_threads(args.threads)
        out, status = COMMANDS[args.command](args)
    except FamilyFormatError as exc:
        print(f"chainlab: {args.family}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DomainError, OSError) as exc:
        print(f"chainlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, ContractError) as exc:
        print(f"chainlab: check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
