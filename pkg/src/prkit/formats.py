"""JSON documents for every structure kind, byte-stable for golden files.

Arrays carry order (proposition/realizer ids are array positions); object
keys are emitted sorted.  Canonical forms are normalized further: their
proposition list is sorted by name and antichain members are sorted pair
lists, so two equivalent structures canonicalize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any, Union

from .appstruct import PAS, SubPASPair
from .canonical import CanonicalForm, canonicalize
from .completeness import (
    IncompletenessCertificate,
    RemarkReport,
    SupremumResult,
)
from .core import BinRel, PRStructure, bin_rel, iter_bits, pr_structure
from .errors import MalformedInputError
from .order import BoundsWitness, FiberReport, Monoid, PreorderWitness

__all__ = [
    "dump_json",
    "parse_document",
    "structure_to_json",
    "structure_from_json",
    "pas_to_json",
    "pas_from_json",
    "bin_rel_to_json",
    "bin_rel_from_json",
    "sub_pas_to_json",
    "sub_pas_from_json",
    "canonical_to_json",
    "canonical_from_json",
    "fiber_report_to_json",
    "preorder_witness_to_json",
    "bounds_witness_to_json",
    "monoid_to_json",
    "supremum_result_to_json",
    "remark_report_to_json",
    "certificate_to_json",
]

Document = Union[PRStructure, PAS, BinRel, SubPASPair, CanonicalForm]


def dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(
            f"parse error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None


def _require(doc: Any, key: str, kind: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedInputError(f"{kind} document needs a {key!r} field")
    return doc[key]


def structure_to_json(s: PRStructure) -> dict:
    cells = []
    n = s.n_props
    for idx, cell in enumerate(s.rho):
        if not cell:
            continue
        a, b = divmod(idx, n)
        cells.append(
            {
                "from": s.props[a],
                "to": s.props[b],
                "realizers": list(s.real_names(cell)),
            }
        )
    return {
        "kind": "pr-structure",
        "props": list(s.props),
        "reals": list(s.reals),
        "rho": cells,
    }


def structure_from_json(doc: dict) -> PRStructure:
    props = _require(doc, "props", "pr-structure")
    reals = _require(doc, "reals", "pr-structure")
    cells = {}
    for entry in _require(doc, "rho", "pr-structure"):
        key = (_require(entry, "from", "rho cell"), _require(entry, "to", "rho cell"))
        if key in cells:
            raise MalformedInputError(f"duplicate rho cell for {key}")
        cells[key] = _require(entry, "realizers", "rho cell")
    return pr_structure(props, reals, cells)


def pas_to_json(pas: PAS) -> dict:
    rows = []
    n = pas.size
    for x in range(n):
        for y in range(n):
            v = pas.table[x][y]
            if v is None:
                continue
            rows.append(
                {
                    "left": pas.carrier[x],
                    "right": pas.carrier[y],
                    "value": pas.carrier[v],
                }
            )
    return {"kind": "pas", "carrier": list(pas.carrier), "table": rows}


def pas_from_json(doc: dict) -> PAS:
    carrier = tuple(_require(doc, "carrier", "pas"))
    index = {name: i for i, name in enumerate(carrier)}
    n = len(carrier)
    if n == 0:
        raise MalformedInputError("pas carrier must be non-empty")
    table = [[None] * n for _ in range(n)]
    for entry in _require(doc, "table", "pas"):
        names = (
            _require(entry, "left", "pas entry"),
            _require(entry, "right", "pas entry"),
            _require(entry, "value", "pas entry"),
        )
        for name in names:
            if name not in index:
                raise MalformedInputError(f"unknown carrier name: {name!r}")
        x, y, v = (index[name] for name in names)
        if table[x][y] is not None:
            raise MalformedInputError(f"duplicate pas entry for ({names[0]}, {names[1]})")
        table[x][y] = v
    return PAS(carrier, tuple(tuple(row) for row in table))


def bin_rel_to_json(b: BinRel) -> dict:
    return {
        "kind": "bin-rel",
        "carrier": list(b.carrier),
        "pairs": [
            [b.carrier[x], b.carrier[y]] for x, y in sorted(b.pairs)
        ],
    }


def bin_rel_from_json(doc: dict) -> BinRel:
    carrier = _require(doc, "carrier", "bin-rel")
    pairs = [tuple(p) for p in _require(doc, "pairs", "bin-rel")]
    for p in pairs:
        if len(p) != 2:
            raise MalformedInputError(f"relation pair must have two entries: {p!r}")
    return bin_rel(carrier, pairs)


def sub_pas_to_json(sp: SubPASPair) -> dict:
    return {
        "kind": "sub-pas",
        "sub": pas_to_json(sp.sub),
        "super": pas_to_json(sp.sup),
        "embedding": {
            sp.sub.carrier[x]: sp.sup.carrier[e]
            for x, e in enumerate(sp.embedding)
        },
    }


def sub_pas_from_json(doc: dict) -> SubPASPair:
    sub = pas_from_json(_require(doc, "sub", "sub-pas"))
    sup = pas_from_json(_require(doc, "super", "sub-pas"))
    mapping = _require(doc, "embedding", "sub-pas")
    embedding = []
    for name in sub.carrier:
        if name not in mapping:
            raise MalformedInputError(f"embedding misses sub element {name!r}")
        embedding.append(sup.element_id(mapping[name]))
    return SubPASPair(sub, sup, tuple(embedding))


def canonical_to_json(cf: CanonicalForm) -> dict:
    members = []
    for member in cf.antichain:
        pairs = sorted(
            [cf.props[a], cf.props[b]] for a, b in cf.member_pairs(member)
        )
        members.append(pairs)
    return {
        "kind": "canonical-form",
        "props": sorted(cf.props),
        "antichain": sorted(members),
    }


def canonical_from_json(doc: dict) -> CanonicalForm:
    props = tuple(_require(doc, "props", "canonical-form"))
    index = {name: i for i, name in enumerate(props)}
    n = len(props)
    members = []
    for pairs in _require(doc, "antichain", "canonical-form"):
        mask = 0
        for pair in pairs:
            if len(pair) != 2 or pair[0] not in index or pair[1] not in index:
                raise MalformedInputError(f"bad antichain pair: {pair!r}")
            mask |= 1 << (index[pair[0]] * n + index[pair[1]])
        members.append(mask)
    return CanonicalForm(props, tuple(sorted(members)))


def canonical_json_of(s: PRStructure) -> dict:
    return canonical_to_json(canonicalize(s))


def fiber_report_to_json(report: FiberReport) -> dict:
    return {
        "kind": "fiber-report",
        "index_size": report.index_size,
        "size": report.size,
        "reflexive": report.reflexive,
        "transitive": report.transitive,
        "antisymmetric": report.antisymmetric,
        "bottoms": [list(e) for e in report.bottoms],
        "tops": [list(e) for e in report.tops],
        "lattical": report.lattical,
        "pairs_without_meet": [
            [list(x), list(y)] for x, y in report.pairs_without_meet
        ],
        "pairs_without_join": [
            [list(x), list(y)] for x, y in report.pairs_without_join
        ],
        "reindex_issues": [
            {
                "kind": issue.kind,
                "mapping": list(issue.mapping),
                "elements": list(issue.elements),
            }
            for issue in report.reindex_issues
        ],
        "pointwise_checked": report.pointwise_checked,
    }


def preorder_witness_to_json(s: PRStructure, w: PreorderWitness) -> dict:
    return {
        "identity": s.reals[w.identity],
        "composition": [
            {
                "first": s.reals[r],
                "then": s.reals[t],
                "composite": s.reals[w.composition[(r, t)]],
            }
            for r, t in sorted(w.composition)
        ],
    }


def bounds_witness_to_json(s: PRStructure, w: BoundsWitness) -> dict:
    return {
        "bottom": s.props[w.bottom],
        "top": s.props[w.top],
        "bottom_realizer": s.reals[w.b_real],
        "top_realizer": s.reals[w.t_real],
    }


def monoid_to_json(m: Monoid) -> dict:
    return {
        "kind": "monoid",
        "elements": list(m.elements),
        "unit": m.unit,
        "table": [
            {"after": a, "first": f, "result": m.table[(a, f)]}
            for a, f in sorted(m.table)
        ],
    }


def supremum_result_to_json(rel: BinRel, result: SupremumResult) -> dict:
    name = rel.carrier.__getitem__
    return {
        "kind": "supremum-result",
        "family": [name(a) for a in result.family],
        "suprema": [name(b) for b in result.suprema],
        "adjoint_suprema": [name(b) for b in result.adjoint_suprema],
        "refutations": [
            {
                "candidate": name(r.candidate),
                "notion": r.notion,
                "clause": r.clause,
                "witness": name(r.witness),
            }
            for r in result.refutations
        ],
    }


def remark_report_to_json(rel: BinRel, report: RemarkReport) -> dict:
    name = rel.carrier.__getitem__
    return {
        "kind": "remark-report",
        "reflexive": report.reflexive,
        "transitive": report.transitive,
        "preorder": report.preorder,
        "suprema": [name(b) for b in report.suprema],
        "adjoint_suprema": [name(b) for b in report.adjoint_suprema],
        "notes": list(report.notes),
    }


def _element_names(s: PRStructure, element: tuple[int, ...]) -> list[str]:
    return [s.props[a] for a in element]


def certificate_to_json(s: PRStructure, cert: IncompletenessCertificate) -> dict:
    return {
        "kind": "incompleteness-certificate",
        "realizer": s.reals[cert.realizer],
        "family": [_element_names(s, member) for member in cert.family],
        "refutations": [
            {
                "candidate": _element_names(s, r.candidate),
                "clause": r.clause,
                "family_index": r.family_index,
                "refuter": None
                if r.refuter is None
                else _element_names(s, r.refuter),
            }
            for r in cert.refutations
        ],
    }


_PARSERS = {
    "pr-structure": structure_from_json,
    "pas": pas_from_json,
    "bin-rel": bin_rel_from_json,
    "sub-pas": sub_pas_from_json,
    "canonical-form": canonical_from_json,
}


def parse_document(text: str) -> Document:
    """Parse any known document kind from JSON text."""
    doc = _load(text)
    if not isinstance(doc, dict):
        raise MalformedInputError("document must be a JSON object")
    kind = doc.get("kind")
    parser = _PARSERS.get(kind)
    if parser is None:
        raise MalformedInputError(f"unknown document kind: {kind!r}")
    return parser(doc)
