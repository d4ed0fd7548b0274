"""Command-line front end: load structures, classify, canonicalize, search.

Commands read one JSON document from a positional path or stdin and write
results to stdout.  Exit status 0 means a verdict was computed (even a
negative one); 2 means malformed input or an unmet precondition; 3 means a
budget was exceeded.  Verdict output names the documented result it
exercises (an anchor into docs/theory.md).
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import IO, Callable, Optional

from . import canonical as canonical_mod
from . import catalog, completeness, formats, order
from .appstruct import PAS, SubPASPair, induce_nested, induce_relative, induce_sigma
from .core import BinRel, PRStructure, is_partitioned
from .errors import BudgetExceededError, MalformedInputError, PreconditionError

ANCHORS = {
    "partitioned": "partitioned-structures",
    "preorderal": "preorderal-characterization",
    "posetal": "posetal-characterization",
    "bounded-posetal": "bounded-characterization",
    "p-structure": "degree-and-pointwise-entailment",
    "canonical": "canonical-antichain",
    "degree": "canonical-antichain",
    "fiber": "fiber-orders",
    "suprema": "supremum-definitions",
    "witness": "fiber-incompleteness",
    "induce": "induced-structures",
    "search": "conjecture-search",
    "lattical-fibers": "fiber-orders",
    "distributive-fibers": "conjecture-search",
}

SEARCH_PROPERTIES = (
    "partitioned",
    "preorderal",
    "posetal",
    "bounded-posetal",
    "p-structure",
    "lattical-fibers",
    "distributive-fibers",
)


def _threads() -> int:
    raw = os.environ.get("PRKIT_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise MalformedInputError(f"PRKIT_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise MalformedInputError(f"PRKIT_THREADS must be positive, got {value}")
    return value


def _read_document(args, stdin: IO[str]):
    if getattr(args, "input", None):
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise MalformedInputError(f"cannot read {args.input}: {e}")
    else:
        text = stdin.read()
    return formats.parse_document(text)


def _need_structure(doc) -> PRStructure:
    if not isinstance(doc, PRStructure):
        raise MalformedInputError(
            f"expected a pr-structure document, got {type(doc).__name__}"
        )
    return doc


def _need_pas(doc) -> PAS:
    if not isinstance(doc, PAS):
        raise MalformedInputError(f"expected a pas document, got {type(doc).__name__}")
    return doc


def _compact(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _property_verdict(s: PRStructure, prop: str) -> tuple[bool, Optional[dict]]:
    if prop == "partitioned":
        return is_partitioned(s), None
    if prop == "preorderal":
        w = order.find_preorder_witness(s)
        return w is not None, None if w is None else formats.preorder_witness_to_json(s, w)
    if prop == "posetal":
        verdict = order.is_posetal(s)
        w = order.find_preorder_witness(s) if verdict else None
        return verdict, None if w is None else formats.preorder_witness_to_json(s, w)
    if prop == "bounded-posetal":
        verdict = order.is_bounded_posetal(s)
        w = order.find_bounds_witness(s) if verdict else None
        return verdict, None if w is None else formats.bounds_witness_to_json(s, w)
    if prop == "p-structure":
        d = canonical_mod.degree(s)
        return d == 1, {"degree": d}
    raise MalformedInputError(f"unknown property: {prop!r}")


def _cmd_check(args, stdin, stdout) -> int:
    s = _need_structure(_read_document(args, stdin))
    verdict, witness = _property_verdict(s, args.property)
    print(f"{args.property}: {str(verdict).lower()}", file=stdout)
    print(f"anchor: {ANCHORS[args.property]}", file=stdout)
    if witness is not None:
        print(f"witness: {_compact(witness)}", file=stdout)
    return 0


def _cmd_classify(args, stdin, stdout) -> int:
    s = _need_structure(_read_document(args, stdin))
    payload = {"kind": "classification"}
    for prop in ("partitioned", "preorderal", "posetal", "bounded-posetal", "p-structure"):
        verdict, witness = _property_verdict(s, prop)
        payload[prop] = {"verdict": verdict, "anchor": ANCHORS[prop]}
        if witness is not None:
            payload[prop]["witness"] = witness
    payload["degree"] = canonical_mod.degree(s)
    print(formats.dump_json(payload), file=stdout)
    return 0


def _cmd_canonical(args, stdin, stdout) -> int:
    s = _need_structure(_read_document(args, stdin))
    print(formats.dump_json(formats.canonical_json_of(s)), file=stdout)
    return 0


def _cmd_degree(args, stdin, stdout) -> int:
    s = _need_structure(_read_document(args, stdin))
    print(canonical_mod.degree(s), file=stdout)
    return 0


def _cmd_gen(args, stdin, stdout) -> int:
    if args.what == "sigma-n":
        if args.arg is None:
            raise MalformedInputError("gen sigma-n needs a size argument")
        try:
            n = int(args.arg)
        except ValueError:
            raise MalformedInputError(f"gen sigma-n needs an integer, got {args.arg!r}")
        s = catalog.sigma_n(n)
    elif args.what == "two-element-lattical":
        s = catalog.two_element_lattical()
    elif args.what == "from-bin":
        if args.arg is None:
            raise MalformedInputError("gen from-bin needs a file argument")
        with open(args.arg, "r", encoding="utf-8") as fh:
            doc = formats.parse_document(fh.read())
        if not isinstance(doc, BinRel):
            raise MalformedInputError("gen from-bin needs a bin-rel document")
        s = catalog.sigma_from_bin(doc)
    else:
        raise MalformedInputError(f"unknown generator: {args.what!r}")
    print(formats.dump_json(formats.structure_to_json(s)), file=stdout)
    return 0


def _cmd_induce(args, stdin, stdout) -> int:
    doc = _read_document(args, stdin)
    if args.kind == "sigma":
        s = induce_sigma(_need_pas(doc), cap=args.max_carrier)
    else:
        if not isinstance(doc, SubPASPair):
            raise MalformedInputError(
                f"induce --kind {args.kind} expects a sub-pas document"
            )
        fn = induce_nested if args.kind == "nested" else induce_relative
        s = fn(doc, cap=args.max_carrier)
    print(formats.dump_json(formats.structure_to_json(s)), file=stdout)
    return 0


def _cmd_fiber(args, stdin, stdout) -> int:
    s = _need_structure(_read_document(args, stdin))
    report = order.check_fiber(
        s,
        args.index_size,
        pairset_mode=args.pairset_mode,
        max_fiber_size=args.max_fiber_size,
        reindex_depth=args.reindex_depth,
    )
    payload = formats.fiber_report_to_json(report)
    payload["anchor"] = ANCHORS["fiber"]
    print(formats.dump_json(payload), file=stdout)
    return 0


def _parse_family(s: PRStructure, text: str, index_size: int) -> list[tuple[int, ...]]:
    family = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise MalformedInputError(f"family element must look like (a,b): {chunk!r}")
        names = [p.strip() for p in chunk[1:-1].split(",")] if chunk != "()" else []
        if len(names) != index_size:
            raise MalformedInputError(
                f"family element {chunk!r} has {len(names)} entries, expected {index_size}"
            )
        family.append(tuple(s.prop_id(name) for name in names))
    return family


def _cmd_suprema(args, stdin, stdout) -> int:
    s = _need_structure(_read_document(args, stdin))
    if args.family is not None:
        rel = completeness.fiber_relation(s, args.index_size, args.max_fiber_size)
        family = _parse_family(s, args.family, args.index_size)
        elements = completeness.fiber_elements(s, args.index_size)
        position = {e: i for i, e in enumerate(elements)}
        ids = [position[e] for e in family]
        result = completeness.find_supremum(rel, ids)
        report = completeness.remark_check(rel, ids)
        payload = {
            "kind": "suprema-report",
            "anchor": ANCHORS["suprema"],
            "result": formats.supremum_result_to_json(rel, result),
            "remark": formats.remark_report_to_json(rel, report),
        }
    else:
        complete, family = completeness.is_fiber_complete(
            s, args.index_size, args.max_fiber_size, args.max_families
        )
        payload = {
            "kind": "completeness-report",
            "anchor": ANCHORS["suprema"],
            "index_size": args.index_size,
            "complete": complete,
            "counterexample_family": None
            if family is None
            else [[s.props[a] for a in member] for member in family],
        }
    print(formats.dump_json(payload), file=stdout)
    return 0


def _cmd_witness(args, stdin, stdout) -> int:
    pas = _need_pas(_read_document(args, stdin))
    r = pas.element_id(args.realizer)
    cert = completeness.incompleteness_witness(pas, r)
    sigma = induce_sigma(pas)
    payload = formats.certificate_to_json(sigma, cert)
    payload["anchor"] = ANCHORS["witness"]
    print(formats.dump_json(payload), file=stdout)
    return 0


def _cmd_enumerate(args, stdin, stdout) -> int:
    spec = catalog.GeneratorSpec(
        kind=args.kind,
        target=args.target,
        n_props=args.props,
        n_reals=args.reals,
        carrier=args.carrier,
        seed=args.seed,
        count=args.count,
    )
    for item in catalog.enumerate_structures(spec):
        if isinstance(item, PRStructure):
            print(_compact(formats.structure_to_json(item)), file=stdout)
        else:
            print(_compact(formats.pas_to_json(item)), file=stdout)
    return 0


def _search_property(
    s: PRStructure, name: str, max_index_size: int, max_fiber_size: int
) -> bool:
    if name == "partitioned":
        return is_partitioned(s)
    if name == "preorderal":
        return order.is_preorderal(s)
    if name == "posetal":
        return order.is_posetal(s)
    if name == "bounded-posetal":
        return order.is_bounded_posetal(s)
    if name == "p-structure":
        return canonical_mod.is_p_structure(s)
    if name == "lattical-fibers":
        return order.fibers_lattical_up_to(s, max_index_size, max_fiber_size)
    if name == "distributive-fibers":
        return order.fibers_distributive_up_to(s, max_index_size, max_fiber_size)
    raise MalformedInputError(
        f"unknown search property {name!r}; choose from {', '.join(SEARCH_PROPERTIES)}"
    )


def _cmd_search(args, stdin, stdout) -> int:
    if "=>" not in args.implication:
        raise MalformedInputError("implication must look like A=>B")
    left, right = (part.strip() for part in args.implication.split("=>", 1))
    for name in (left, right):
        if name not in SEARCH_PROPERTIES:
            raise MalformedInputError(
                f"unknown search property {name!r}; choose from {', '.join(SEARCH_PROPERTIES)}"
            )
    if args.kind == "exhaustive":
        candidates = itertools.chain.from_iterable(
            catalog.all_pr_structures(p, r)
            for p in range(1, args.max_props + 1)
            for r in range(1, args.max_reals + 1)
        )
        if args.count is not None:
            candidates = itertools.islice(candidates, args.count)
    else:
        if args.count is None:
            raise MalformedInputError("random search needs --count")
        candidates = catalog.random_pr_structures(
            args.max_props, args.max_reals, args.seed, args.count
        )

    def is_counterexample(s: PRStructure) -> bool:
        return _search_property(
            s, left, args.max_index_size, args.max_fiber_size
        ) and not _search_property(s, right, args.max_index_size, args.max_fiber_size)

    counterexample = None
    checked = 0
    found_index = None
    threads = _threads()
    stream = enumerate(candidates)
    if threads == 1:
        for idx, s in stream:
            checked += 1
            if is_counterexample(s):
                counterexample, found_index = s, idx
                break
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            while counterexample is None:
                chunk = list(itertools.islice(stream, 256))
                if not chunk:
                    break
                checked += len(chunk)
                flags = list(pool.map(lambda p: is_counterexample(p[1]), chunk))
                for (idx, s), flag in zip(chunk, flags):
                    if flag:
                        counterexample, found_index = s, idx
                        break
    payload = {
        "kind": "search-report",
        "anchor": ANCHORS["search"],
        "implication": f"{left}=>{right}",
        "checked": checked,
        "counterexample_index": found_index,
        "counterexample": None
        if counterexample is None
        else formats.structure_to_json(counterexample),
    }
    print(formats.dump_json(payload), file=stdout)
    return 0


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", help="input file (default: stdin)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prkit",
        description="Construct, canonicalize, and classify finite "
        "proposition/realizer structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide one property, print verdict + witness")
    p.add_argument(
        "--property",
        required=True,
        choices=["partitioned", "preorderal", "posetal", "bounded-posetal", "p-structure"],
    )
    _add_input(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("classify", help="decide all properties at once")
    _add_input(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("canonical", help="print the canonical form as JSON")
    _add_input(p)
    p.set_defaults(func=_cmd_canonical)

    p = sub.add_parser("degree", help="print the least equivalent realizer count")
    _add_input(p)
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("gen", help="emit a named structure")
    p.add_argument("what", choices=["sigma-n", "two-element-lattical", "from-bin"])
    p.add_argument("arg", nargs="?", help="size for sigma-n, file for from-bin")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("induce", help="map an applicative structure to a structure")
    p.add_argument("--kind", choices=["sigma", "nested", "relative"], default="sigma")
    p.add_argument("--max-carrier", type=int, default=12)
    _add_input(p)
    p.set_defaults(func=_cmd_induce)

    p = sub.add_parser("fiber", help="brute-force one fiber and print the report")
    p.add_argument("--index-size", type=int, required=True)
    p.add_argument("--pairset-mode", action="store_true")
    p.add_argument("--max-fiber-size", type=int, default=order.DEFAULT_FIBER_CAP)
    p.add_argument("--reindex-depth", type=int, default=order.DEFAULT_REINDEX_DEPTH)
    _add_input(p)
    p.set_defaults(func=_cmd_fiber)

    p = sub.add_parser("suprema", help="completeness checks on one fiber")
    p.add_argument("--index-size", type=int, required=True)
    p.add_argument(
        "--family",
        help='fiber elements like "(a,b);(c,d)"; omit to scan all families',
    )
    p.add_argument("--max-fiber-size", type=int, default=completeness.DEFAULT_FIBER_CAP)
    p.add_argument("--max-families", type=int, default=completeness.DEFAULT_FAMILY_CAP)
    _add_input(p)
    p.set_defaults(func=_cmd_suprema)

    p = sub.add_parser("witness", help="incompleteness certificate for a pas realizer")
    p.add_argument("--realizer", required=True)
    _add_input(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("enumerate", help="stream generated structures as NDJSON")
    p.add_argument("--target", choices=["pr", "pas"], required=True)
    p.add_argument("--kind", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--props", type=int, default=0)
    p.add_argument("--reals", type=int, default=0)
    p.add_argument("--carrier", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("search", help="hunt for counterexamples to an implication")
    p.add_argument("--implication", required=True, help="e.g. distributive-fibers=>p-structure")
    p.add_argument("--kind", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--max-props", type=int, default=2)
    p.add_argument("--max-reals", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--max-index-size", type=int, default=2)
    p.add_argument("--max-fiber-size", type=int, default=order.DEFAULT_FIBER_CAP)
    p.set_defaults(func=_cmd_search)

    return parser


def main(
    argv: Optional[list[str]] = None,
    stdin: Optional[IO[str]] = None,
    stdout: Optional[IO[str]] = None,
    stderr: Optional[IO[str]] = None,
) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, stdin, stdout)
    except BudgetExceededError as e:
        print(f"error: {e}", file=stderr)
        return 3
    except (MalformedInputError, PreconditionError) as e:
        print(f"error: {e}", file=stderr)
        return 2


def console_main() -> None:
    sys.exit(main())
