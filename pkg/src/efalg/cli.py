"""Command line surface.

Exit codes are a stable contract for CI: 0 all checks passed, 1 a property
or axiom check failed, 2 an operation's hypotheses were not met, 3 the
input was malformed. ``suite`` honors the EFALG_JOBS environment variable
for its worker count; output bytes do not depend on it.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import (
    EnumerationBoundError,
    direct_product,
    enumerate_all,
    horizontal_sum,
    make_boolean,
    make_chain,
    named_catalog,
)
from .core import AxiomViolationError, MalformedTableError, verify_effect_algebra
from .fileformat import ParseError, parse, parse_raw, serialize, serialize_generalized
from .iso import find_isomorphism
from .properties import run_suite
from .structure import HypothesisError, structure_report
from .triple import ReconstructionError, extract_triple, verify_roundtrip

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_HYPOTHESIS = 2
EXIT_INPUT = 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str):
    return parse(_read(path))


def cmd_verify(args) -> int:
    table, zero, one, _ = parse_raw(_read(args.file))
    verdict = verify_effect_algebra(table, zero, one)
    if verdict.ok:
        print(f"{args.file}: ok (order {table.order})")
        return EXIT_OK
    for violation in verdict.violations:
        print(f"{args.file}: violation {violation.describe()}")
    return EXIT_PROPERTY


def cmd_analyze(args) -> int:
    alg = _load(args.file)
    report = structure_report(alg)
    if args.json:
        print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
        return EXIT_OK
    d = report.to_json_dict()
    print(f"order {d['order']}  zero {d['zero']}  one {d['one']}")
    for key in ("sharp", "meager", "hypermeager", "center", "principal"):
        print(f"{key}: {d[key]}")
    print(f"blocks: {d['blocks']}")
    for flag, value in d["flags"].items():
        mark = "yes" if value["value"] else f"no, witness {value['witness']}"
        print(f"{flag}: {mark}")
    return EXIT_OK


def cmd_triple(args) -> int:
    alg = _load(args.file)
    rep = extract_triple(alg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "sharp.efa").write_text(serialize(rep.sharp))
    (out / "meager.gefa").write_text(serialize_generalized(rep.meager))
    h = {str(s): sorted(rep.h[s]) for s in rep.sharp.elements()}
    (out / "h.json").write_text(json.dumps(h, indent=2, sort_keys=True) + "\n")
    backmaps = {
        "sharp_to_source": list(rep.sharp_to_source or ()),
        "meager_to_source": list(rep.meager_to_source or ()),
    }
    (out / "backmaps.json").write_text(json.dumps(backmaps, indent=2, sort_keys=True) + "\n")
    print(f"wrote triple of {args.file} to {out}")
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    alg = _load(args.file)
    result = verify_roundtrip(alg)
    if result.ok:
        assert result.tea is not None and result.tea.phi is not None
        pairs = " ".join(
            f"{x}->{result.tea.carrier[k]}" for x, k in enumerate(result.tea.phi)
        )
        print(f"{args.file}: isomorphism {pairs}")
        return EXIT_OK
    print(f"{args.file}: roundtrip failed: {result.failure} witness {result.witness}")
    return EXIT_PROPERTY


def cmd_iso(args) -> int:
    a = _load(args.file1)
    b = _load(args.file2)
    witness = find_isomorphism(a, b)
    if witness is None:
        print("not isomorphic")
        return EXIT_PROPERTY
    print("isomorphic: " + " ".join(f"{x}->{y}" for x, y in enumerate(witness)))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "chain":
        alg = make_chain(args.n)
    elif args.kind == "boolean":
        alg = make_boolean(args.n)
    elif args.kind == "hsum":
        alg = horizontal_sum([_load(f) for f in args.files])
    else:
        if len(args.files) != 2:
            raise MalformedTableError("product needs exactly two operand files")
        alg = direct_product(_load(args.files[0]), _load(args.files[1]))
    text = serialize(alg)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    counts: dict[int, int] = {}
    for alg in enumerate_all(args.max_order):
        k = counts.get(alg.order, 0)
        counts[alg.order] = k + 1
        (out / f"order{alg.order}_{k:03d}.efa").write_text(serialize(alg))
    for order in sorted(counts):
        print(f"order {order}: {counts[order]} algebras")
    return EXIT_OK


def cmd_suite(args) -> int:
    universe: list[tuple[str, object]] = [
        (entry.name, entry.algebra) for entry in named_catalog()
    ]
    for i, alg in enumerate(enumerate_all(args.max_order)):
        universe.append((f"enum-{alg.order}-{i:03d}", alg))
    reports = run_suite(universe, jobs=args.jobs if args.jobs else None)
    width = max(len(r.anchor) for r in reports)
    failed = 0
    for r in reports:
        status = "PASS" if not r.failures else "FAIL"
        if r.failures:
            failed += 1
        print(f"{r.anchor:<{width}}  algebras {r.algebras:4d}  checks {r.checked:7d}  {status}")
        for name, witness in r.failures[:3]:
            print(f"{'':<{width}}  failure in {name}: {witness}")
        for note in r.notes:
            print(f"{'':<{width}}  note: {note}")
    print(f"anchors: {len(reports)}, failing: {failed}")
    return EXIT_OK if failed == 0 else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="efalg", description="finite effect algebra toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the axioms of an algebra file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("analyze", help="compute the structure report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("triple", help="extract the sharp/meager/h triple")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_triple)

    p = sub.add_parser("roundtrip", help="rebuild from the triple and verify the isomorphism")
    p.add_argument("file")
    p.set_defaults(fn=cmd_roundtrip)

    p = sub.add_parser("iso", help="decide isomorphism of two algebra files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("gen", help="generate a named construction")
    p.add_argument("--kind", required=True, choices=["chain", "boolean", "hsum", "product"])
    p.add_argument("--n", type=int, default=0, help="size parameter for chain/boolean")
    p.add_argument("--files", nargs="*", default=[], help="operand files for hsum/product")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("enumerate", help="stream all algebras up to an order")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("suite", help="run every property check over the catalog and enumeration")
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--jobs", type=int, default=0, help="workers; default EFALG_JOBS or 1")
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, MalformedTableError, EnumerationBoundError, ValueError) as exc:
        if isinstance(exc, AxiomViolationError):
            print(f"error: input fails the algebra axioms: {exc}", file=sys.stderr)
            return EXIT_PROPERTY
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ReconstructionError as exc:
        print(f"error: internal consistency: {exc}", file=sys.stderr)
        return EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())
