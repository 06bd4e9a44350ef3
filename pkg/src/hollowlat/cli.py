"""Command-line entry point: ``hollowlat <verb> ...``.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 on success (or no
unexpected violation), 1 when violations were found, 2 on usage or load
errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import constructions, fileformat
from .core import LatticeError
from .elements import format_lattice_profile, format_element_profile, element_profile, lattice_profile
from .families import (default_allowlist_path, default_manifest_path, generate, load_manifest,
                       parse_spec)
from .hollow import format_hollow_report
from .results import VIOLATED


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _load(token) -> "MultLattice":  # noqa: F821
    """A lattice file, or failing that a family spec."""
    path = Path(token)
    if path.exists():
        return fileformat.load(path)
    try:
        spec = parse_spec(token)
    except LatticeError:
        raise LatticeError(f"{token}: no such file and not a family spec") from None
    return generate(spec)


def _emit(L, out):
    if out:
        fileformat.dump(L, out)
        print(f"wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(fileformat.dumps(L))


def _corpus_path(value):
    p = Path(value)
    if not p.exists() and p.name == default_manifest_path().name:
        return default_manifest_path()
    return p


# ------------------------------------------------------------------ verbs

def cmd_gen(args):
    spec = parse_spec(" ".join(args.spec))
    _emit(generate(spec), args.output)
    return 0


def cmd_classify(args):
    L = _load(args.lattice)
    sys.stdout.write(format_lattice_profile(L, lattice_profile(L)))
    if args.elements:
        for a in L.elements:
            sys.stdout.write(format_element_profile(L, element_profile(L, a)))
    return 0


def cmd_hollow(args):
    sys.stdout.write(format_hollow_report(_load(args.lattice)))
    return 0


def cmd_residual(args):
    L = _load(args.lattice)
    print(L.names[L.residual(L.resolve(args.a), L.resolve(args.b))])
    return 0


def cmd_quotient(args):
    L = _load(args.lattice)
    Q, _ = constructions.quotient(L, L.resolve(args.element))
    _emit(Q, args.output)
    return 0


def cmd_localize(args):
    L = _load(args.lattice)
    if args.prime is not None:
        Q, _ = constructions.localize_at_prime(L, L.resolve(args.prime))
    else:
        S = [L.resolve(t) for t in args.set.split(",") if t]
        Q, _ = constructions.localize(L, S)
    _emit(Q, args.output)
    return 0


def cmd_product(args):
    _emit(constructions.product(*[_load(t) for t in args.lattices]), args.output)
    return 0


def _relabel_stress(corpus, count, seed):
    from .search import canonical_form
    rng = np.random.default_rng(seed)
    bad = 0
    for spec in corpus:
        L = generate(spec)
        ref = canonical_form(L)
        for _ in range(count):
            if canonical_form(L.relabel(rng.permutation(L.n))) != ref:
                print(f"canonical form changed under relabeling: {spec}", file=sys.stderr)
                bad += 1
                break
    return bad


def cmd_verify(args):
    from .verify import load_allowlist, run_suite
    corpus = load_manifest(_corpus_path(args.corpus))
    allow = load_allowlist(args.allow) if args.allow != "none" else set()
    checks = "all" if args.checks == "all" else args.checks.split(",")
    report = run_suite(corpus, checks, workers=args.workers, allowlist=allow)
    if args.format == "machine":
        sys.stdout.write(report.format_machine())
    else:
        sys.stdout.write(report.format_text())
    code = report.exit_code
    if args.relabel:
        if _relabel_stress(corpus, args.relabel, args.seed):
            code = 1
    unexpected = report.unexpected()
    if unexpected:
        print(f"{len(unexpected)} unexpected violation(s)", file=sys.stderr)
    return code


def cmd_search(args):
    from .search import MAX_ENUM_N, enumerate_mult_lattices, export
    if not 1 <= args.max_n <= MAX_ENUM_N:
        raise UsageError(f"--max-n must be in 1..{MAX_ENUM_N}")
    if args.out:
        paths = export(args.max_n, args.out)
        print(f"wrote {len(paths)} files to {args.out}", file=sys.stderr)
    for n in range(1, args.max_n + 1):
        print(f"n={n}\t{len(enumerate_mult_lattices(n))}")
    return 0


def cmd_mine(args):
    from .search import mine
    res = mine(args.query, args.max_n, workers=args.workers)
    print(f"{res.status}\t{res.lattice}\t{res.witness_text()}")
    if res.detail:
        print(res.detail, file=sys.stderr)
    return 1 if res.status == VIOLATED else 0


# ----------------------------------------------------------------- parser

def build_parser():
    p = _Parser(prog="hollowlat", description="finite multiplicative lattices and hollow elements")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for relabeling stress tests; never changes results")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", help="generate a family member in the lattice file format")
    s.add_argument("spec", nargs="+", help="family spec, e.g. zmod m=12")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("classify", help="print the lattice profile")
    s.add_argument("lattice")
    s.add_argument("--elements", action="store_true", help="also print element profiles")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("hollow", help="strongly hollow elements, kappa, L_a and representations")
    s.add_argument("lattice")
    s.set_defaults(func=cmd_hollow)

    s = sub.add_parser("residual", help="print (a:b)")
    s.add_argument("lattice")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_residual)

    s = sub.add_parser("quotient", help="emit L/i")
    s.add_argument("lattice")
    s.add_argument("element")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("localize", help="emit a localization")
    s.add_argument("lattice")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--prime")
    g.add_argument("--set", help="comma separated multiplicative set")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_localize)

    s = sub.add_parser("product", help="emit a direct product")
    s.add_argument("lattices", nargs="+")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("verify", help="run the theorem checks over a corpus")
    s.add_argument("--corpus", default=str(default_manifest_path()))
    s.add_argument("--checks", default="all")
    s.add_argument("--allow", default=str(default_allowlist_path()),
                   help="expected-discrepancy file, or 'none'")
    s.add_argument("--format", choices=("text", "machine"), default="text")
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--relabel", type=int, default=0, metavar="N",
                   help="also check canonical forms under N random relabelings per lattice")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="enumerate multiplicative lattices")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--out", help="directory for the exported lattice files")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("mine", help="look for a counterexample among enumerated models")
    s.add_argument("--query", required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_mine)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:          # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hollowlat: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        sys.stderr.close()
        return 0
    except (LatticeError, KeyError, OSError) as exc:
        print(f"hollowlat: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
