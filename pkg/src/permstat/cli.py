"""
permstat command line.

    permstat stat "3 1 4 2" --stats cover,des,maj
    permstat bij cycleneg1 "7 8 3 5 1 2 4 9 6"
    permstat code maj-encode --k 1 "3 2 1"
    permstat dist --n 4 --stats des
    permstat verify prop_ed --n 2..7

Exit codes: 0 success, 1 verification failure, 2 parse or name error,
3 invalid code, 4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import codes, dist, perm
from .codes import Code, CodeParseError, InvalidCode
from .perm import Permutation, PermutationParseError
from .stats import UnknownStatistic, parse_stats

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CODE, EXIT_CAP = 0, 1, 2, 3, 4

BIJECTIONS = {
    "cycle0": perm.cycle0,
    "cycle0_inv": perm.cycle0_inverse,
    "cycleneg1": perm.cycle_neg1,
    "cycleneg1_inv": perm.cycle_neg1_inverse,
    "flip": perm.flip,
    "prime": perm.prime,
}

CODE_ACTIONS = ("inv-encode", "inv-decode", "maj-encode", "maj-decode")


class UsageError(Exception):
    def __init__(self, message: str, status: int = EXIT_USAGE):
        super().__init__(message)
        self.status = status


def parse_range(text: str) -> list[int]:
    """``"4"`` or ``"2..7"`` (inclusive)."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or A..B") from None
    if b < a:
        raise UsageError(f"empty range {text!r}")
    return list(range(a, b + 1))


def _perm_arg(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except PermutationParseError as e:
        raise UsageError(f"cannot parse permutation: {e} (token {e.token!r})") from None


def _code_arg(text: str) -> Code:
    try:
        return Code.parse(text)
    except CodeParseError as e:
        raise UsageError(f"cannot parse code: {e}") from None
    except InvalidCode as e:
        raise UsageError(f"invalid code: {e}", EXIT_CODE) from None


def _stats_arg(text: str):
    try:
        return parse_stats(text)
    except UnknownStatistic as e:
        raise UsageError(str(e)) from None


def _emit(args, text: str, doc) -> None:
    if args.json:
        print(json.dumps(doc, separators=(",", ":")))
    else:
        print(text)


def cmd_stat(args) -> int:
    sigma = _perm_arg(args.perm)
    descs = _stats_arg(args.stats)
    for d in descs:
        if d.domain != "perms":
            raise UsageError(f"{d.label} is a code statistic")
    values = [(d.label, d(sigma)) for d in descs]
    _emit(args, "\n".join(f"{name} {v}" for name, v in values),
          {"perm": str(sigma), "stats": {name: v for name, v in values}})
    return EXIT_OK


def cmd_bij(args) -> int:
    sigma = _perm_arg(args.perm)
    image = BIJECTIONS[args.map](sigma)
    _emit(args, str(image), {"map": args.map, "input": str(sigma), "output": str(image)})
    return EXIT_OK


def cmd_code(args) -> int:
    action = args.action
    if action.startswith("maj") and args.k is None:
        raise UsageError(f"{action} needs --k")
    if args.k is not None and args.k < 1:
        raise UsageError("--k must be >= 1")
    if action == "inv-encode":
        out = str(codes.inv_encode(_perm_arg(args.input)))
    elif action == "maj-encode":
        out = str(codes.maj_encode(_perm_arg(args.input), args.k))
    elif action == "inv-decode":
        out = str(codes.inv_decode(_code_arg(args.input)))
    else:
        out = str(codes.maj_decode(_code_arg(args.input), args.k))
    _emit(args, out, {"action": action, "k": args.k, "input": args.input.strip(), "output": out})
    return EXIT_OK


def cmd_dist(args) -> int:
    descs = _stats_arg(args.stats)
    if not descs:
        raise UsageError("--stats is empty")
    variables = args.vars.split(",") if args.vars else None
    if variables is not None and len(variables) != len(descs):
        raise UsageError("--vars needs one name per statistic")
    try:
        poly = dist.distribution(args.n, descs, args.domain, variables,
                                 threads=args.threads, cap=args.cap)
    except dist.SizeCapExceeded as e:
        raise UsageError(str(e), EXIT_CAP) from None
    except (dist.DomainError, ValueError) as e:
        raise UsageError(str(e)) from None
    if args.json:
        print(poly.to_json())
    else:
        print(poly.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.identity not in dist.IDENTITIES:
        raise UsageError(f"unknown identity {args.identity!r}; known: "
                         + ", ".join(dist.IDENTITIES))
    spec = dist.IDENTITIES[args.identity]
    ns = parse_range(args.n)
    if spec.needs_k:
        if args.k is None:
            raise UsageError(f"identity {args.identity} needs --k")
        ks = parse_range(args.k)
        if ks[0] < 1:
            raise UsageError("--k values must be >= 1")
    else:
        ks = [None]
    cap = dist.size_cap() if args.cap is None else args.cap
    if ns[0] < 1:
        raise UsageError("--n values must be >= 1")
    if ns[-1] > cap:
        raise UsageError(f"n = {ns[-1]} exceeds the size cap {cap}", EXIT_CAP)
    status = EXIT_OK
    for n in ns:
        for k in ks:
            report = dist.verify(args.identity, n, k, threads=args.threads, cap=cap)
            if args.json:
                print(json.dumps(report.to_document(args.timing), separators=(",", ":")))
            else:
                print(report.to_line(args.timing))
            if not report.passed:
                status = EXIT_FAIL
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permstat",
        description="Permutation statistics, bijections, codes and exhaustive identity checks.")
    parser.add_argument("--json", action="store_true", help="emit JSON documents")
    sub = parser.add_subparsers(dest="command", metavar="{stat,bij,code,dist,verify}")
    sub.required = True

    # --json is accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    p = sub.add_parser("stat", parents=[common], help="evaluate statistics on one permutation")
    p.add_argument("perm")
    p.add_argument("--stats", required=True, help="comma list, k via suffix: des,majhat_k:2")
    p.set_defaults(func=cmd_stat)

    p = sub.add_parser("bij", parents=[common], help="apply a bijection")
    p.add_argument("map", choices=sorted(BIJECTIONS))
    p.add_argument("perm")
    p.set_defaults(func=cmd_bij)

    p = sub.add_parser("code", parents=[common], help="encode or decode codes")
    p.add_argument("action", choices=CODE_ACTIONS)
    p.add_argument("input")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_code)

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument("--threads", type=int, default=1, help="worker processes")
    engine.add_argument("--cap", type=int, default=None,
                        help=f"size cap (default {dist.DEFAULT_CAP} or $PERMSTAT_CAP)")

    p = sub.add_parser("dist", parents=[common, engine], help="joint distribution polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stats", required=True)
    p.add_argument("--domain", choices=dist.DOMAINS, default="perms")
    p.add_argument("--vars", help="comma list of variable names")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("verify", parents=[common, engine], help="check a named identity")
    p.add_argument("identity")
    p.add_argument("--n", required=True, help="N or A..B")
    p.add_argument("--k", help="K or A..B, for k-parameterized identities")
    p.add_argument("--timing", action="store_true", help="append elapsed seconds")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"permstat: error: {e}", file=sys.stderr)
        return e.status


if __name__ == "__main__":
    sys.exit(main())
