"""Command-line surface.

Subcommands: validate, axioms, bracket, homology, traces.  Input files use
the sectioned text format of coalgebra_file; algebra files are dualized on
load for the commands that need a coalgebra.  All output is deterministic
given the inputs and flags.  Exit codes: 0 all checks pass, 1 a check
failed, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .coalgebra_file import LoadedFile, ParseError, parse_file
from .cobar_bracket import (
    CobarAlgebra,
    axiom_suite,
    cobar,
    double_bracket,
    format_double,
)
from .cyclic_coalgebra import DegenerateForm, InvalidCoalgebra, dualize, validate, validate_algebra
from .cyclic_homology import compare_with_cobar
from .expressions import ExpressionError, parse_expression
from .graded_core import InfiniteSlice
from .natural_quotient import (
    NotACycle,
    format_natural,
    format_one_form,
    homology_bracket,
    natural_bracket,
    natural_slice_basis,
    natural_slice_homology,
    one_form_coordinates,
    project_natural,
)
from .rep_poisson import RepBracket, check_rep_poisson_axioms, check_trace_poisson, rep_algebra, rep_homology_slice

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _load(path: str) -> LoadedFile:
    return parse_file(path)


def _coalgebra_of(loaded: LoadedFile):
    if loaded.coalgebra is not None:
        return loaded.coalgebra
    return dualize(loaded.algebra)


def _cobar_of(loaded: LoadedFile) -> CobarAlgebra:
    return cobar(_coalgebra_of(loaded), loaded.cobar_names)


def cmd_validate(args) -> int:
    loaded = _load(args.file)
    if loaded.kind == "algebra":
        rep = validate_algebra(loaded.algebra)
        print(rep.format_text())
        if not rep.required_passed:
            return EXIT_CHECK_FAILED
        dual = dualize(loaded.algebra)
        rep2 = validate(dual)
        print(rep2.format_text())
        return EXIT_OK if rep2.required_passed else EXIT_CHECK_FAILED
    rep = validate(loaded.coalgebra)
    print(rep.format_text())
    return EXIT_OK if rep.required_passed else EXIT_CHECK_FAILED


def cmd_axioms(args) -> int:
    loaded = _load(args.file)
    alg = _cobar_of(loaded)
    report = axiom_suite(alg, args.max_weight, args.triple_max_weight, mutation=args.mutate)
    print(report.format_text())
    return EXIT_OK if report.required_passed else EXIT_CHECK_FAILED


def cmd_bracket(args) -> int:
    loaded = _load(args.file)
    alg = _cobar_of(loaded)
    lhs = parse_expression(alg, args.lhs)
    rhs = parse_expression(alg, args.rhs)
    if args.mode == "double":
        out = double_bracket(alg, lhs, rhs, mutation=args.mutate)
        print(format_double(out))
        return EXIT_OK
    a = project_natural(alg, lhs, args.reduced)
    b = project_natural(alg, rhs, args.reduced)
    if args.mode == "natural":
        print(format_natural(natural_bracket(alg, a, b, mutation=args.mutate)))
        return EXIT_OK
    out = homology_bracket(alg, a, b, mutation=args.mutate)
    print(format_natural(out))
    coords = one_form_coordinates(alg, out) if set(alg.index) >= {"x", "y", "t"} else None
    if coords is not None:
        print(f"as one-form: {format_one_form(coords)}")
    return EXIT_OK


def _natural_degree_span(alg: CobarAlgebra, max_weight: int, max_degree: int | None) -> range:
    """Degrees that can carry words of weight up to the bound."""
    if not alg.generators:
        return range(0, 1)
    lo = min(0, min(g.degree for g in alg.generators) * max_weight)
    hi = max(0, max(g.degree for g in alg.generators) * max_weight)
    if max_degree is not None:
        hi = min(hi, max_degree)
        lo = max(lo, -abs(max_degree))
    return range(lo, hi + 1)


def cmd_homology(args) -> int:
    loaded = _load(args.file)
    alg = _cobar_of(loaded)
    sep = "\t" if args.format == "tsv" else "  "
    status = EXIT_OK
    if args.target == "natural":
        label = "reduced" if args.reduced else "full"
        print(f"necklace homology table ({label} quotient) for {loaded.name}")
        print(sep.join(["weight", "degree", "dim", "representatives"]))
        for w in range(1, args.max_weight + 1):
            for d in _natural_degree_span(alg, args.max_weight, args.max_degree):
                if not natural_slice_basis(alg, d, w, args.reduced) and d > 0:
                    continue
                dim, reps = natural_slice_homology(alg, d, w, args.reduced)
                reps_text = "; ".join(format_natural(r) for r in reps) or "-"
                print(sep.join([str(w), str(d), str(dim), reps_text]))
        return EXIT_OK
    if args.target == "cyclic":
        report = compare_with_cobar(_coalgebra_of(loaded), args.max_weight, alg, mutation=args.mutate)
        print(report.format_text())
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED
    # rep homology
    print(f"matrix-entry homology table for {loaded.name}")
    print(sep.join(["d", "weight", "degree", "dim"]))
    for d in args.dim:
        ra = rep_algebra(alg, d)
        for w in range(1, args.max_weight + 1):
            for deg in _natural_degree_span(alg, args.max_weight, args.max_degree):
                dim, _ = rep_homology_slice(ra, deg, w)
                print(sep.join([str(d), str(w), str(deg), str(dim)]))
    return status


def cmd_traces(args) -> int:
    loaded = _load(args.file)
    alg = _cobar_of(loaded)
    sep = "\t" if args.format == "tsv" else "  "
    failures = 0
    checked = 0
    words = [w for w in alg.words_up_to_weight(args.max_weight) if w]
    basis_words = []
    seen = set()
    for w in words:
        nf = alg.rotation_normal_form(w)
        if nf is None or nf[0] in seen:
            continue
        seen.add(nf[0])
        basis_words.append(nf[0])
    basis_words.sort(key=lambda w: (len(w), w))
    print(f"trace compatibility for {loaded.name}: words of weight <= {args.max_weight}")
    print(sep.join(["d", "lhs-word", "rhs-word", "status"]))
    for d in args.dim:
        ra = rep_algebra(alg, d)
        bracket = RepBracket(ra, mutation=args.mutate)
        for u in basis_words:
            for v in basis_words:
                out = check_trace_poisson(ra, u, v, bracket=bracket)
                checked += 1
                if not out.passed:
                    failures += 1
                print(sep.join([str(d), alg.format_word(u), alg.format_word(v), "pass" if out.passed else "FAIL"]))
        rep = check_rep_poisson_axioms(ra, samples=args.samples, seed=args.seed, mutation=args.mutate)
        print(rep.format_text())
        if not rep.passed:
            failures += 1
    print(f"trace checks: {checked - failures}/{checked} passed")
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncpoisson",
        description="Double Poisson brackets on cobar constructions of cyclic coalgebras, "
        "induced Lie brackets on cyclic quotients, and matrix-entry Poisson structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mutate=True):
        p.add_argument("file", help="coalgebra or algebra file")
        p.add_argument("--format", choices=("text", "tsv"), default="text")
        if mutate:
            p.add_argument(
                "--mutate",
                default=None,
                help="named sign mutation for sensitivity testing (test instrumentation)",
            )

    p = sub.add_parser("validate", help="structural and cyclicity checks of the input")
    common(p, mutate=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("axioms", help="exhaustive double-bracket axiom suite")
    common(p)
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--triple-max-weight", type=int, default=None)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("bracket", help="evaluate a bracket of two expressions")
    common(p)
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--mode", choices=("double", "natural", "homology"), default="double")
    p.add_argument("--reduced", action="store_true", help="work in the unit-killing quotient")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("homology", help="slice homology tables")
    common(p)
    p.add_argument("--target", choices=("natural", "cyclic", "rep"), default="natural")
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--dim", type=int, action="append", default=None)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("traces", help="trace compatibility and matrix-entry bracket axioms")
    common(p)
    p.add_argument("--max-weight", type=int, default=3)
    p.add_argument("--dim", type=int, action="append", default=None)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_traces)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "dim", None) is None and hasattr(args, "dim"):
        args.dim = [1, 2]
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ExpressionError, InvalidCoalgebra, DegenerateForm, InfiniteSlice, NotACycle, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
