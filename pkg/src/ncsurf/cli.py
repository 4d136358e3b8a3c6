"""Command-line interface.

Exit codes: 0 success or check passed, 1 check failed, 2 bad input,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from . import classify as cl
from . import geometry as geo
from . import ncalgebra as nc
from .builders import named
from .eulerform import GramMatrix, InvalidGramMatrix, check_surface_type, coxeter, serre_matrix
from .mutation import apply_word, parse_word, trace_word, verify_braid_relations

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 20180101


class InputError(Exception):
    pass


# -- matrix documents ----------------------------------------------------------


def parse_matrix_document(text: str) -> tuple[list[list[int]], Optional[str]]:
    """Parse either ``n`` followed by n^2 integers, or ``{"n", "entries", "name"}``.

    Lines starting with ``#`` are ignored in the text form.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
            n = int(doc["n"])
            entries = doc["entries"]
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"malformed matrix document: {exc}") from None
        if entries and isinstance(entries[0], list):
            entries = [x for row in entries for x in row]
        name = doc.get("name")
    else:
        lines = [ln.split("#", 1)[0] for ln in stripped.splitlines()]
        tokens = " ".join(lines).split()
        if not tokens:
            raise InputError("empty matrix file")
        try:
            n = int(tokens[0])
            entries = [int(t) for t in tokens[1:]]
        except ValueError as exc:
            raise InputError(f"malformed matrix file: {exc}") from None
        name = None
    if n < 1 or len(entries) != n * n:
        raise InputError(f"expected {n * n} entries for n={n}, got {len(entries)}")
    if any(not isinstance(x, int) or isinstance(x, bool) for x in entries):
        raise InputError("matrix entries must be integers")
    return [list(entries[i * n : (i + 1) * n]) for i in range(n)], name


def format_matrix_document(rows: Sequence[Sequence[int]], fmt: str = "text", name: Optional[str] = None) -> str:
    n = len(rows)
    if fmt == "structured":
        doc = {"n": n, "entries": [x for r in rows for x in r]}
        if name:
            doc["name"] = name
        return json.dumps(doc)
    width = max(len(str(x)) for r in rows for x in r)
    body = "\n".join(" ".join(str(x).rjust(width) for x in r) for r in rows)
    return f"{n}\n{body}"


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def load_gram(path: Optional[str], named_spec: Optional[str]) -> tuple[GramMatrix, str]:
    if named_spec:
        try:
            return named(named_spec), named_spec
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if not path:
        raise InputError("give a matrix file or --named")
    rows, name = parse_matrix_document(_read(path))
    try:
        return GramMatrix.from_rows(rows), name or path
    except InvalidGramMatrix as exc:
        raise InputError(str(exc)) from None


# -- subcommands -------------------------------------------------------------------


def cmd_check(args) -> int:
    M, label = load_gram(args.matrix, args.named)
    report = check_surface_type(M, args.rank)
    print(f"# {label}")
    print(report)
    return EXIT_OK if report.passes_surface_type else EXIT_FAIL


def cmd_mutate(args) -> int:
    M, _ = load_gram(args.matrix, args.named)
    try:
        w = parse_word(args.word, M.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.trace:
        for part, X in trace_word(M, w):
            print(f"# {part}")
            print(format_matrix_document(X.entries, args.format))
        if len(w):
            return EXIT_OK
    print(format_matrix_document(apply_word(M, w).entries, args.format))
    return EXIT_OK


def _params(args) -> cl.SearchParams:
    return cl.SearchParams(
        entry_bound_enumeration=max(args.bound, 1) if hasattr(args, "bound") else 8,
        entry_cap_orbit=args.cap,
        max_orbit_size=args.max_states,
        max_word_length=args.max_word,
    )


def cmd_classify(args) -> int:
    p = _params(args)
    try:
        if args.n == 4:
            report = cl.classify_rank4(args.bound, p, workers=args.workers)
        elif args.n == 3:
            report = cl.classify_rank3(args.bound, p, workers=args.workers)
        else:
            report = cl.classify(args.n, args.bound, {}, p, workers=args.workers)
    except cl.BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    doc = json.dumps(report.to_dict(), indent=1)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(doc + "\n")
    if args.format == "structured":
        print(doc)
    else:
        print(report)
    return EXIT_OK


def cmd_orbit(args) -> int:
    M, _ = load_gram(args.matrix, args.named)
    p = _params(args)
    if args.to or args.to_named:
        T, _ = load_gram(args.to, args.to_named)
        if T.n != M.n:
            raise InputError("matrices have different rank")
        res = cl.equivalent(M, T, p)
        print(f"status: {res.status}")
        if res.word is not None:
            print(f"word: {res.word}")
        else:
            a, b = res.fingerprints
            print(f"fingerprint 1: {a.short()}")
            print(f"fingerprint 2: {b.short()}")
        return EXIT_OK if res else EXIT_FAIL
    try:
        cert = cl.canonical_form(M, p)
    except cl.BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    print(f"# witness: {cert.witness_word}")
    print(f"# states explored: {cert.states_explored}{'' if cert.complete else ' (word-length limit reached)'}")
    print(f"# fingerprint: {cert.invariants_fingerprint.short()}")
    print(format_matrix_document(cert.representative.entries, args.format))
    return EXIT_OK


def cmd_gram(args) -> int:
    if args.extended is not None:
        try:
            M = nc.extended_gram(args.extended)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        M, _ = load_gram(args.matrix, args.named)
    rows = M.entries
    if args.coxeter:
        rows = coxeter(M)
    elif args.serre:
        rows = serre_matrix(M)
    print(format_matrix_document(rows, args.format))
    return EXIT_OK


def cmd_geometry(args) -> int:
    if args.ram_h is None and args.ram_e is None and args.index is None:
        spec = geo.OrderSpec.pullback_of_cubic(args.degree)
    else:
        ram = geo.DivisorF1(Fraction(args.ram_h or 0), Fraction(args.ram_e or 0))
        try:
            spec = geo.OrderSpec(args.degree, ram, args.index)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    dp = geo.is_del_pezzo(spec)
    ft = geo.generic_fiber_type(spec)
    print(dp)
    print(ft)
    print(f"del Pezzo: {'yes' if dp.is_del_pezzo else 'no'}; type: {ft.fiber_type.replace('_', '-')}")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    try:
        if args.sklyanin:
            a, b, c = (Fraction(x) for x in args.sklyanin.split(","))
            P = nc.sklyanin(a, b, c)
        elif args.commutative:
            P = nc.commutative(args.commutative)
        elif args.presentation:
            P = nc.presentation_from_json(_read(args.presentation))
        else:
            raise InputError("give --sklyanin, --commutative or a presentation file")
        dims = nc.graded_dims(P, args.max_degree, mode=args.mode)
    except nc.ResourceBudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    print(",".join(map(str, dims)))
    return EXIT_OK


def cmd_relations(args) -> int:
    report = verify_braid_relations(args.n, args.trials, args.bound, args.seed)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_fat(args) -> int:
    for n in args.orders:
        print(f"n={n}: s={nc.fat_point_multiplicity(n)}")
    return EXIT_OK


def cmd_self_test(args) -> int:
    from .selftest import run_golden

    failures = 0
    for name, ok in run_golden():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        failures += not ok
    return EXIT_OK if failures == 0 else EXIT_FAIL


# -- parser ---------------------------------------------------------------------


def _add_matrix(p: argparse.ArgumentParser) -> None:
    p.add_argument("matrix", nargs="?", help="matrix file ('-' for stdin)")
    p.add_argument("--named", help="built-in matrix: P2, A, B:m or Bp:m")


def _add_search(p: argparse.ArgumentParser) -> None:
    d = cl.SearchParams()
    p.add_argument("--cap", type=int, default=d.entry_cap_orbit, help="max |entry| while exploring orbits")
    p.add_argument("--max-states", type=int, default=d.max_orbit_size)
    p.add_argument("--max-word", type=int, default=d.max_word_length)


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "structured"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncsurf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the surface-type axioms")
    _add_matrix(p)
    p.add_argument("--rank", type=int, default=2, help="required rank of s - id")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("mutate", help="apply a signed braid word")
    _add_matrix(p)
    p.add_argument("word", help='e.g. "e1 e3 s3 s1 s2 s3" (rightmost acts first)')
    p.add_argument("--trace", action="store_true", help="print every intermediate matrix")
    _add_format(p)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("classify", help="enumerate and classify surface-type Gram matrices")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", help="also write the structured report here")
    _add_search(p)
    _add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbit", help="canonical form, or equivalence with --to/--to-named")
    _add_matrix(p)
    p.add_argument("--to")
    p.add_argument("--to-named")
    _add_search(p)
    _add_format(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("gram", help="print a Gram, Serre or Coxeter matrix")
    _add_matrix(p)
    p.add_argument("--extended", type=int, metavar="S", help="Gram matrix of the plane's collection plus a fat point of multiplicity S")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--coxeter", action="store_true")
    g.add_argument("--serre", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("geometry", help="canonical divisor, Kleiman test and fibre type of an order on F_1")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--ram-h", help="H coefficient of the ramification curve (default 3)")
    p.add_argument("--ram-e", help="E coefficient of the ramification curve (default 0)")
    p.add_argument("--index", type=int, help="ramification index (default: the degree)")
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("hilbert", help="graded dimensions of a quadratic algebra")
    p.add_argument("presentation", nargs="?", help="JSON presentation file")
    p.add_argument("--sklyanin", metavar="A,B,C")
    p.add_argument("--commutative", type=int, metavar="G")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--mode", choices=("rational", "modular"), default="rational")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("relations", help="verify the signed braid relations on random matrices")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--bound", type=int, default=9)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("fat", help="fat point multiplicity for automorphism orders")
    p.add_argument("orders", type=int, nargs="+")
    p.set_defaults(func=cmd_fat)

    p = sub.add_parser("self-test", help="run the golden matrix suite")
    p.set_defaults(func=cmd_self_test)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
