"""Command-line front end: ``python3 -m spherahall <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 an
enumeration exceeded the ceiling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .arith import format_rational, is_prime
from .cache import ENV_VAR, DiskCache
from .category import InvalidLabel
from .hall import (HallConfig, HallElement, NonTerminating, Unsupported, assoc_check,
                   express_in_spheres, hall_number, hall_product, sample_triples, set_store)
from .ncpoly import WrongFamily
from .oracle import DEFAULT_CEILING, EnumerationTooLarge, InfiniteHomology, TruncationUnstable
from .presentations import basis_rank_check, torus_relations_check, verify_relations
from .wire import DescriptorError, dumps, element_to_json, object_from_json, object_to_json, polynomial_to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CEILING = 0, 1, 2, 3

CONVENTIONS = """\
conventions:
  An object is a JSON record {"d": D, "summands": [{"shift": s, "len": n}, ...]}.
  The summand (s, n) is Sigma^s of the length-n string module: its homology
  has a generator in degree -s and further classes in degrees -s + r(1-d),
  0 < r < n. For d = 0 every len is 1 and "branch": 1 | 2 picks T or T'.
  S is {"shift": 0, "len": 1}; Sigma^-1 S is {"shift": -1, "len": 1}.
  The product [X][Y] sums over triangles Y -> Z -> X -> Sigma Y.
  Generators: x[i] = Sigma^(-2i) S, y[i] = Sigma^(-2i-1) S (d = 3);
  z[i] = Sigma^(-i) S; z'[i] = Sigma^(-i) T' (d = 0); z[i,j] = Sigma^(-i) of
  the length-j string (d = 1).
  Rationals are printed as "a/b". --cache DIR (or $SPHERAHALL_CACHE) keeps
  basis products on disk between runs.
"""


class InputError(ValueError):
    pass


def parse_window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise InputError(f"window must look like a..b, got {text!r}") from None
    if lo > hi:
        raise InputError(f"empty window {text!r}")
    return lo, hi


def _load_object(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    return object_from_json(text)


def _emit(data, as_text: str | None, args) -> None:
    if args.json or as_text is None:
        print(dumps(data))
    else:
        print(as_text)


def _config(args) -> HallConfig:
    return HallConfig(ceiling=args.ceiling)


def _same_d(*objs) -> None:
    if len({o.d for o in objs}) != 1:
        raise InputError("all objects must share the same d")


def cmd_product(args) -> int:
    x, y = _load_object(args.x), _load_object(args.y)
    _same_d(x, y)
    e = hall_product(HallElement.basis(x, args.q), HallElement.basis(y, args.q), _config(args))
    print(dumps({"kind": "element", **element_to_json(e)}))
    return EXIT_OK


def cmd_number(args) -> int:
    x, y, z = (_load_object(t) for t in (args.x, args.y, args.z))
    _same_d(x, y, z)
    value = format_rational(hall_number(x, y, z, args.q, args.ceiling))
    _emit({"kind": "number", "value": value}, value, args)
    return EXIT_OK


def _term_text(coeff: str, word: list[str]) -> str:
    if not word:
        return coeff
    mono = "*".join(word)
    return mono if coeff == "1" else f"{coeff}*{mono}"


def cmd_express(args) -> int:
    x = _load_object(args.x)
    w = express_in_spheres(x, args.q, _config(args))
    data = {"kind": "polynomial", **polynomial_to_json(w, args.q)}
    text = " + ".join(_term_text(t["coeff"], t["word"]) for t in data["terms"]) or "0"
    _emit(data, text, args)
    return EXIT_OK


def cmd_relations(args) -> int:
    window = parse_window(args.window)
    if args.d == 1 and args.blocks is None:
        raise InputError("--blocks is required when --d 1")
    rep = verify_relations(args.d, window, args.q, args.blocks, _config(args))
    data = {"kind": "relations", "d": rep.d, "q": rep.q, "window": list(rep.window),
            "blocks": args.blocks if args.d == 1 else None, "passed": rep.all_passed,
            "results": [{"id": r.rid, "relation": r.relation, "passed": r.passed,
                         "residual": None if r.passed else element_to_json(r.residual)}
                        for r in rep.results]}
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.rid}: {r.relation}"
             + ("" if r.passed else f"  residual {r.residual!r}") for r in rep.results]
    lines.append(f"{len(rep.results) - len(rep.failures)}/{len(rep.results)} relations vanish "
                 f"(d={rep.d}, q={rep.q}, window {window[0]}..{window[1]})")
    _emit(data, "\n".join(lines), args)
    return EXIT_OK if rep.all_passed else EXIT_FAIL


def cmd_basis_check(args) -> int:
    window = parse_window(args.window)
    rep = basis_rank_check(window, args.dim, args.q, config=_config(args))
    data = {"kind": "basis-check", "window": list(window), "dim": args.dim, "q": args.q,
            "pairs": rep.pairs, "columns": rep.columns, "rank": rep.rank, "passed": rep.full_rank}
    text = f"{'PASS' if rep.full_rank else 'FAIL'} rank {rep.rank} of {rep.pairs} products ({rep.columns} isoclasses)"
    _emit(data, text, args)
    return EXIT_OK if rep.full_rank else EXIT_FAIL


def cmd_torus_check(args) -> int:
    window = parse_window(args.window)
    rep = torus_relations_check(window, args.samples, args.seed)
    data = {"kind": "torus-check", "relations": rep.relations, "relation_failures": rep.relation_failures,
            "commutators": rep.commutators, "commutator_failures": rep.commutator_failures,
            "passed": rep.all_passed}
    text = (f"{'PASS' if rep.all_passed else 'FAIL'} {rep.relations - len(rep.relation_failures)}/{rep.relations}"
            f" relations and {rep.commutators - len(rep.commutator_failures)}/{rep.commutators} commutators map to 0")
    _emit(data, text, args)
    return EXIT_OK if rep.all_passed else EXIT_FAIL


def cmd_assoc(args) -> int:
    triples = sample_triples(args.d, args.samples, args.seed, args.dim, parse_window(args.shifts))
    config = _config(args)
    failures = [t for t in triples if not assoc_check(*t, args.q, config)]
    data = {"kind": "assoc", "d": args.d, "q": args.q, "samples": args.samples, "seed": args.seed,
            "passed": not failures, "failures": [[object_to_json(o) for o in t] for t in failures]}
    text = f"{'PASS' if not failures else 'FAIL'} {len(triples) - len(failures)}/{len(triples)} triples associate"
    _emit(data, text, args)
    return EXIT_OK if not failures else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="prime size of the ground field (default 2)")
    common.add_argument("--cache", metavar="DIR", help=f"on-disk product cache (default ${ENV_VAR})")
    common.add_argument("--ceiling", type=int, default=DEFAULT_CEILING,
                        help="largest number of morphisms one enumeration may visit")
    common.add_argument("--json", action="store_true", help="print the machine-readable report")

    parser = argparse.ArgumentParser(prog="spherahall", description="Derived Hall algebras of spherical objects.",
                                     epilog=CONVENTIONS, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text,
                           epilog=CONVENTIONS, formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        return p

    p = add("product", cmd_product, "expand [X][Y] in the isoclass basis")
    p.add_argument("x", help="object descriptor (JSON or @file)")
    p.add_argument("y")
    p = add("number", cmd_number, "the Hall number F_XY^Z")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("z")
    p = add("express", cmd_express, "write [X] in the sphere generators (d = 3)")
    p.add_argument("x")
    p = add("relations", cmd_relations, "check that the defining relations vanish in the Hall algebra")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--window", default="0..0", help="index window a..b")
    p.add_argument("--blocks", type=int, help="largest string length j of z[i,j] (d = 1)")
    p = add("basis-check", cmd_basis_check, "rank of the products [M][N], M even and N odd (d = 3)")
    p.add_argument("--window", default="-2..0", help="homology degree window a..b")
    p.add_argument("--dim", type=int, default=2, help="total dimension bound for M and N")
    p = add("torus-check", cmd_torus_check, "relations and commutators die under the torus character")
    p.add_argument("--window", default="-3..3")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p = add("assoc", cmd_assoc, "associativity on seeded random basis triples")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=4, help="total dimension bound per object")
    p.add_argument("--shifts", default="-3..3", help="shift window a..b for summands")
    return parser


def _glue_windows(argv: Sequence[str]) -> list[str]:
    """Let '--window -2..2' through argparse, which would read -2..2 as a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--window", "--shifts"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_windows(sys.argv[1:] if argv is None else argv))
    if not is_prime(args.q):
        print(f"error: --q must be prime, got {args.q}", file=sys.stderr)
        return EXIT_INPUT
    cache_dir = args.cache or os.environ.get(ENV_VAR)
    set_store(DiskCache(cache_dir) if cache_dir else None)
    try:
        return args.func(args)
    except EnumerationTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except (InputError, DescriptorError, InvalidLabel, WrongFamily, Unsupported,
            json.JSONDecodeError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonTerminating, InfiniteHomology, TruncationUnstable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        set_store(None)
