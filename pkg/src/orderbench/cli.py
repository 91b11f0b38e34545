"""Command-line front end.

Verbs: check (classify a structure), stone (Stone space plus duality
verification), spectrum (characters and the separativity chain), envelope
(enveloping algebra, cover equivalence, optional map factoring), saturate
(saturated families and frame laws), verify (named acceptance suite), gen
(emit a structure file), search (counterexample search).

Exit codes: 2 for malformed input, 1 when a verified property that should
hold fails (witnesses are in the report), 0 otherwise.  Classification
results (a structure simply not being a basic lattice, say) are not
failures.  Reports default to readable text; --format json emits the
serialization with one entry per check.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import axioms, lab, saturation, spectrum, stone, suites, tight
from .core import P0Set, dump_structure, load_structure, order_predicates
from .errors import (
    CapExceeded,
    FormatError,
    IndexOutOfRange,
    MissingMinimum,
    NotTransitive,
    OrderbenchError,
    UnknownFamily,
    UnknownSuite,
)
from .report import Report, reports_to_json

INPUT_ERRORS = (
    FormatError,
    IndexOutOfRange,
    MissingMinimum,
    NotTransitive,
    UnknownFamily,
    UnknownSuite,
    CapExceeded,
    FileNotFoundError,
)


def _load(path: str, max_size: int | None = None) -> P0Set:
    B = load_structure(Path(path).read_text())
    if max_size is not None and B.size > max_size:
        raise CapExceeded(f"structure size {B.size} exceeds --max-size {max_size}")
    return B


def _emit(reports: list[Report], fmt: str) -> None:
    if fmt == "json":
        print(reports_to_json(reports))
    else:
        for rep in reports:
            print(rep.render())


def cmd_check(args) -> int:
    B = _load(args.structure, args.max_size)
    reports = [
        order_predicates(B),
        axioms.check_basic_lattice(B),
        axioms.check_basic_semilattice(B),
    ]
    _emit(reports, args.format)
    return 0


def cmd_stone(args) -> int:
    B = _load(args.structure, args.max_size)
    X = stone.stone_space(B)
    ults = stone.enumerate_ultrafilters(B)
    print(f"ultrafilters: {len(ults)}  points: {X.points}", file=sys.stderr)
    reports = []
    code = 0
    if axioms.is_basic_lattice(B):
        rep = stone.verify_duality(B)
        reports.append(rep)
        if not rep.passed:
            code = 1
    else:
        print("not a basic lattice; duality verification skipped", file=sys.stderr)
    if args.format == "json":
        doc = {"points": X.points, "ultrafilters": [list(_bits(u)) for u in ults]}
        doc.update(json.loads(reports_to_json(reports)))
        print(json.dumps(doc, indent=2))
    else:
        _emit(reports, args.format)
    return code


def _bits(mask: int):
    x = 0
    while mask:
        if mask & 1:
            yield x
        mask >>= 1
        x += 1


def cmd_spectrum(args) -> int:
    B = _load(args.structure, args.max_size)
    chars = spectrum.tight_characters(B)
    print(f"tight characters: {len(chars)}", file=sys.stderr)
    chain = spectrum.separativity_chain(B)
    pseudo = spectrum.verify_pseudochar(B)
    _emit([chain, pseudo], args.format)
    return 0 if chain.passed and pseudo.passed else 1


def cmd_envelope(args) -> int:
    B = _load(args.structure, args.max_size)
    S = tight.enveloping_algebra(B)
    print(
        f"enveloping algebra: {len(S.elements)} elements, {len(S.atoms())} atoms",
        file=sys.stderr,
    )
    reports = [tight.verify_fgrho(B)] if B.size <= tight.FGRHO_CAP else []
    code = 0 if all(r.passed for r in reports) else 1
    if args.map:
        beta = tight.load_struct_map(
            Path(args.map).read_text(), Path(args.map).parent
        )
        props = tight.map_properties(beta)
        reports.append(props)
        if props.holds("tightish") and props.holds("representation"):
            pi = tight.factor_tight(beta)
            embed = tight.enveloping_algebra(beta.source).rho_index
            agree = all(
                pi.assignment[embed[x]] == beta.assignment[x]
                for x in range(beta.source.size)
            )
            from .report import Check, report

            reports.append(report("factoring", [Check("factors_through_embedding", agree)]))
            if not agree:
                code = 1
        else:
            print("map is not a tightish representation; factoring skipped", file=sys.stderr)
    _emit(reports, args.format)
    return code


def cmd_saturate(args) -> int:
    B = _load(args.structure, args.max_size)
    fam = saturation.saturated_family(B, "finite")
    print(f"saturated sets: {len(fam.sets)}", file=sys.stderr)
    reports = []
    code = 0
    if B.size <= saturation.FRAME_CAP:
        laws = saturation.verify_subset_laws(B)
        reports.append(laws)
        if not laws.passed:
            code = 1
        if order_predicates(B).holds("meet_semilattice"):
            frame = saturation.verify_frame(B)
            reports.append(frame)
            if axioms.is_basic_semilattice(B) and not frame.passed:
                code = 1
    _emit(reports, args.format)
    return code


def cmd_verify(args) -> int:
    names = suites.CRITERIA if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        result = suites.run_suite(name, seed=args.seed)
        ok &= result.passed
        print(result.render())
    return 0 if ok else 1


def cmd_gen(args) -> int:
    if args.family == "random":
        B = lab.random_p0set(args.n, args.seed, args.reflexive, args.density)
    else:
        B = lab.make_family(args.family, args.n)
    text = dump_structure(B)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def cmd_search(args) -> int:
    found = lab.search_counterexample(args.suite, args.bound, args.budget, args.seed)
    if found is None:
        print("no counterexample found")
        return 0
    print("counterexample:")
    print(dump_structure(found))
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orderbench",
        description="verification workbench for finite order structures",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-size", type=int, default=None, help="override size caps downward")

    p = sub.add_parser("check", help="classify a structure file")
    p.add_argument("structure")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("stone", help="Stone space and duality verification")
    p.add_argument("structure")
    common(p)
    p.set_defaults(fn=cmd_stone)

    p = sub.add_parser("spectrum", help="tight characters and separativity chain")
    p.add_argument("structure")
    common(p)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("envelope", help="enveloping algebra and universality")
    p.add_argument("structure")
    p.add_argument("--map", help="map file to factor through the embedding")
    common(p)
    p.set_defaults(fn=cmd_envelope)

    p = sub.add_parser("saturate", help="saturated families and frame laws")
    p.add_argument("structure")
    common(p)
    p.set_defaults(fn=cmd_saturate)

    p = sub.add_parser("verify", help="run a named acceptance suite")
    p.add_argument("suite", choices=suites.CRITERIA + ["all"])
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen", help="emit a structure file")
    p.add_argument("family", choices=lab.FAMILY_NAMES + ("random",))
    p.add_argument("n", type=int)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--reflexive", action="store_true")
    p.add_argument("--out")
    common(p)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("search", help="search for a counterexample")
    p.add_argument("suite")
    p.add_argument("--bound", type=int, default=5)
    p.add_argument("--budget", type=int, default=1000)
    common(p)
    p.set_defaults(fn=cmd_search)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OrderbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
