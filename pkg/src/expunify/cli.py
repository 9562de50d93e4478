"""Command-line front end.

Exit codes: 0 unifiable / check passed, 1 failure / check failed, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from collections import Counter
from pathlib import Path

from . import e1
from .flatten import E1SymbolInDecidableFragment
from .gen import random_problem
from .graphs import build_D, build_P, d_to_dot, p_to_dot
from .rewrite import verify_unifier
from .solver import FuelExhausted, Verdict, solve
from .terms import ParseError, Term, apply_subst, format_term, parse_equation, parse_term

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def read_problem(path: str | Path) -> list[tuple[Term, Term]]:
    eqs = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            eqs.append(parse_equation(line))
        except ParseError as e:
            raise InputError(f"{path}:{lineno}: {e}") from None
    if not eqs:
        raise InputError(f"{path}: no equations")
    return eqs


def read_assignment_file(path: str | Path) -> tuple[dict[str, Term], list[tuple[Term, Term]]]:
    """Lines ``X := term`` bind variables; lines ``s =? t`` are equations."""
    binding: dict[str, Term] = {}
    eqs = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if ":=" in line:
                name, _, rhs = line.partition(":=")
                name = name.strip()
                if not name[:1].isupper():
                    raise InputError(f"{path}:{lineno}: {name!r} is not a variable")
                binding[name] = parse_term(rhs)
            else:
                eqs.append(parse_equation(line))
        except ParseError as e:
            raise InputError(f"{path}:{lineno}: {e}") from None
    return binding, eqs


def verdict_record(verdict: Verdict, *, verified: bool | None = None, wall_time: float | None = None) -> dict:
    rec: dict = {"status": verdict.status}
    if verdict.unifiable:
        rec["unifier"] = {v: format_term(t) for v, t in verdict.unifier.items()}
        rec["free_parameters"] = list(verdict.free_parameters)
        if verified is not None:
            rec["verified"] = verified
    else:
        rec["reason"] = verdict.reason.code
        rec["witness"] = list(verdict.reason.witness)
    stats = dict(verdict.stats)
    if wall_time is not None:
        stats["wall_time"] = wall_time
    rec["stats"] = stats
    return rec


def _dump(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, ensure_ascii=False)


def cmd_solve(args) -> int:
    try:
        eqs = read_problem(args.file)
    except (InputError, OSError) as e:
        return _error(args, str(e))
    trace = (lambda ev: print(ev, file=sys.stderr)) if args.trace else None
    start = time.perf_counter()
    try:
        verdict = solve(eqs, fuel=args.fuel, trace=trace)
    except E1SymbolInDecidableFragment as e:
        return _error(args, str(e))
    except FuelExhausted as e:
        return _error(args, f"internal error: {e}")
    elapsed = time.perf_counter() - start

    verified = verify_unifier(verdict.full, eqs) if args.verify and verdict.unifiable else None
    if args.dot_d:
        Path(args.dot_d).write_text(d_to_dot(build_D(verdict.state)))
    if args.dot_p:
        Path(args.dot_p).write_text(p_to_dot(build_P(verdict.state)))

    if args.json:
        print(_dump(verdict_record(verdict, verified=verified, wall_time=elapsed)))
    elif verdict.unifiable:
        print("unifiable")
        for v, t in verdict.unifier.items():
            print(f"  {v} ↦ {format_term(t)}")
        if verdict.free_parameters:
            print(f"  free parameters: {', '.join(verdict.free_parameters)}")
        if verified is not None:
            print(f"  verified: {str(verified).lower()}")
    else:
        print(f"fail {verdict.reason.code}")
        for w in verdict.reason.witness:
            print(f"  {w}")
    return EXIT_OK if verdict.unifiable else EXIT_FAIL


def _error(args, message: str) -> int:
    if getattr(args, "json", False):
        print(_dump({"status": "error", "message": message}))
    else:
        print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def cmd_e1_normalize(args) -> int:
    try:
        t = parse_term(args.term)
    except ParseError as e:
        return _error(args, str(e))
    print(format_term(e1.ac_to_term(e1.e1_normalize(t))))
    return EXIT_OK


def cmd_e1_check(args) -> int:
    try:
        binding, eqs = read_assignment_file(args.file)
    except (InputError, OSError) as e:
        return _error(args, str(e))
    ok = True
    for l, r in eqs:
        holds = e1.e1_equal(apply_subst(binding, l), apply_subst(binding, r))
        ok &= holds
        print(f"{'ok  ' if holds else 'FAIL'} {format_term(l)} =? {format_term(r)}")
    print("all equations hold" if ok else "some equations do not hold")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_e1_gadget(args) -> int:
    if args.kind == "mult":
        try:
            eqs, witness = e1.build_mult_gadget(args.i, args.j)
        except ValueError as e:
            return _error(args, str(e))
        ok = e1.check_assignment(witness, eqs)
    else:
        lhs, rhs = e1.build_add_gadget(args.i, args.j)
        eqs, witness = [(lhs, rhs)], {}
        ok = e1.e1_equal(lhs, rhs)
    if args.json:
        print(_dump({
            "equations": [f"{format_term(l)} =? {format_term(r)}" for l, r in eqs],
            "witness": {v: format_term(t) for v, t in witness.items()},
            "verified": ok,
        }))
    else:
        print("equations:")
        for l, r in eqs:
            print(f"  {format_term(l)} =? {format_term(r)}")
        if witness:
            print("witness:")
            for v, t in witness.items():
                print(f"  {v} := {format_term(t)}")
        print(f"verified: {str(ok).lower()}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fuzz(args) -> int:
    rng = random.Random(args.seed)
    outcomes: Counter = Counter()
    unsound = 0
    start = time.perf_counter()
    for _ in range(args.count):
        eqs = random_problem(
            rng, max_equations=args.max_equations, max_vars=args.max_vars, max_depth=args.max_depth
        )
        try:
            v = solve(eqs)
        except FuelExhausted:
            outcomes["FUEL_EXHAUSTED"] += 1
            continue
        outcomes["unifiable" if v.unifiable else v.reason.code] += 1
        if args.verify and v.unifiable and not verify_unifier(v.full, eqs):
            unsound += 1
    elapsed = time.perf_counter() - start
    for k in sorted(outcomes):
        print(f"{k:16s} {outcomes[k]}")
    print(f"{args.count} problems in {elapsed:.2f}s")
    if args.verify:
        print(f"unverified unifiers: {unsound}")
    return EXIT_FAIL if outcomes["FUEL_EXHAUSTED"] or unsound else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="expunify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a problem file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", action="store_true", help="print rule applications to stderr")
    p.add_argument("--verify", action="store_true", help="check the unifier by rewriting")
    p.add_argument("--dot-d", metavar="FILE")
    p.add_argument("--dot-p", metavar="FILE")
    p.add_argument("--fuel", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("e1", help="abelian-group oracle")
    e1sub = p.add_subparsers(dest="e1_command", required=True)
    q = e1sub.add_parser("normalize")
    q.add_argument("term")
    q.set_defaults(func=cmd_e1_normalize)
    q = e1sub.add_parser("check")
    q.add_argument("file")
    q.set_defaults(func=cmd_e1_check)
    q = e1sub.add_parser("gadget")
    q.add_argument("kind", choices=["mult", "add"])
    q.add_argument("i", type=int)
    q.add_argument("j", type=int)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_e1_gadget)

    p = sub.add_parser("fuzz", help="random termination suite")
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-equations", type=int, default=10)
    p.add_argument("--max-vars", type=int, default=12)
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
