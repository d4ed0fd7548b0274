"""Suprema in explicit relations and completeness of explicit fibers.

A supremum must be above every family member and below every other upper
bound; the adjoint variant replaces the two clauses with one biconditional.
Over a finite fiber, a set-indexed family's supremum depends only on the
family's image, so exhausting the subsets of the fiber decides completeness.

``incompleteness_witness`` builds the constructive counterexample available
whenever every element maps to every other under some realizer and one
realizer's image is large enough: the family of point indicators over its
domain, certified to lack a supremum by refuting every candidate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .appstruct import PAS, induce_sigma, is_totally_matching
from .core import BinRel, PRStructure, iter_bits
from .errors import (
    BudgetExceededError,
    MalformedInputError,
    PreconditionError,
    TheoremViolation,
)

__all__ = [
    "Refutation",
    "SupremumResult",
    "RemarkReport",
    "CandidateRefutation",
    "IncompletenessCertificate",
    "find_supremum",
    "remark_check",
    "fiber_elements",
    "fiber_relation",
    "has_supremum",
    "is_fiber_complete",
    "nonrepresentable_function",
    "incompleteness_witness",
]

DEFAULT_FIBER_CAP = 16
DEFAULT_FAMILY_CAP = 1 << 16


@dataclass(frozen=True)
class Refutation:
    """Why one candidate fails one notion of supremum."""

    candidate: int
    notion: str  # "supremum" | "adjoint-supremum"
    clause: str
    witness: int


@dataclass
class SupremumResult:
    """All suprema/adjoint-suprema of a family, or refutations when none."""

    family: tuple[int, ...]
    suprema: tuple[int, ...]
    adjoint_suprema: tuple[int, ...]
    refutations: tuple[Refutation, ...]

    @property
    def supremum(self) -> Optional[int]:
        return self.suprema[0] if self.suprema else None

    @property
    def adjoint_supremum(self) -> Optional[int]:
        return self.adjoint_suprema[0] if self.adjoint_suprema else None


def find_supremum(rel: BinRel, family: Iterable[int]) -> SupremumResult:
    """Test every carrier element as supremum and as adjoint-supremum.

    Refutations are recorded, per candidate, for each notion that ends up
    without any witness.
    """
    n = len(rel.carrier)
    fam = sorted({a for a in family})
    for a in fam:
        if not 0 <= a < n:
            raise MalformedInputError(f"family member out of range: {a}")
    upper = [c for c in range(n) if all(rel.holds(a, c) for a in fam)]
    upper_set = set(upper)
    suprema = []
    adjoints = []
    sup_refutations = []
    adj_refutations = []
    for b in range(n):
        bad_member = next((a for a in fam if not rel.holds(a, b)), None)
        if bad_member is not None:
            sup_refutations.append(
                Refutation(b, "supremum", "not-upper-bound", bad_member)
            )
        else:
            bad_bound = next((c for c in upper if not rel.holds(b, c)), None)
            if bad_bound is None:
                suprema.append(b)
            else:
                sup_refutations.append(
                    Refutation(b, "supremum", "not-least", bad_bound)
                )
        bad_adj = None
        clause = ""
        for c in range(n):
            is_bound = c in upper_set
            reaches = rel.holds(b, c)
            if is_bound and not reaches:
                bad_adj, clause = c, "misses-upper-bound"
                break
            if reaches and not is_bound:
                bad_adj, clause = c, "relates-to-non-bound"
                break
        if bad_adj is None:
            adjoints.append(b)
        else:
            adj_refutations.append(Refutation(b, "adjoint-supremum", clause, bad_adj))
    refutations: list[Refutation] = []
    if not suprema:
        refutations.extend(sup_refutations)
    if not adjoints:
        refutations.extend(adj_refutations)
    return SupremumResult(
        tuple(fam), tuple(suprema), tuple(adjoints), tuple(refutations)
    )


@dataclass
class RemarkReport:
    """Observed interplay of the two supremum notions on one instance."""

    reflexive: bool
    transitive: bool
    preorder: bool
    suprema: tuple[int, ...]
    adjoint_suprema: tuple[int, ...]
    notes: tuple[str, ...]


def remark_check(rel: BinRel, family: Iterable[int]) -> RemarkReport:
    """Verify the supremum/adjoint-supremum interplay on one instance.

    On transitive relations every supremum must be an adjoint-supremum; on
    reflexive ones the converse; on preorders both notions coincide and are
    unique up to mutual relatedness.  A failed check raises, since these are
    consequences of the definitions.
    """
    n = len(rel.carrier)
    reflexive = all(rel.holds(a, a) for a in range(n))
    transitive = all(
        rel.holds(a, c)
        for a in range(n)
        for b in range(n)
        if rel.holds(a, b)
        for c in range(n)
        if rel.holds(b, c)
    )
    result = find_supremum(rel, family)
    notes = []
    if transitive:
        for b in result.suprema:
            if b not in result.adjoint_suprema:
                raise TheoremViolation(
                    "transitive relation: supremum was not an adjoint-supremum"
                )
        notes.append("transitive: every supremum is an adjoint-supremum")
    if reflexive:
        for b in result.adjoint_suprema:
            if b not in result.suprema:
                raise TheoremViolation(
                    "reflexive relation: adjoint-supremum was not a supremum"
                )
        notes.append("reflexive: every adjoint-supremum is a supremum")
    if reflexive and transitive:
        if set(result.suprema) != set(result.adjoint_suprema):
            raise TheoremViolation("preorder: supremum notions did not coincide")
        for b in result.suprema:
            for b2 in result.suprema:
                if not (rel.holds(b, b2) and rel.holds(b2, b)):
                    raise TheoremViolation(
                        "preorder: suprema were not mutually related"
                    )
        notes.append("preorder: suprema coincide and are unique up to mutual relation")
    return RemarkReport(
        reflexive,
        transitive,
        reflexive and transitive,
        result.suprema,
        result.adjoint_suprema,
        tuple(notes),
    )


def fiber_elements(s: PRStructure, index_size: int) -> list[tuple[int, ...]]:
    """All proposition families of the given length, lexicographic."""
    return list(itertools.product(range(s.n_props), repeat=index_size))


def _fiber_masks(
    s: PRStructure, index_size: int, max_fiber_size: int
) -> tuple[list[tuple[int, ...]], list[int], list[int]]:
    size = s.n_props**index_size
    if size > max_fiber_size:
        raise BudgetExceededError("fiber size", max_fiber_size, size)
    elements = fiber_elements(s, index_size)
    n = s.n_props
    f = len(elements)
    above = [0] * f
    below = [0] * f
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            acc = s.full_real_mask
            for a, b in zip(x, y):
                acc &= s.rho[a * n + b]
                if not acc:
                    break
            if acc:
                above[i] |= 1 << j
                below[j] |= 1 << i
    return elements, above, below


def fiber_relation(
    s: PRStructure, index_size: int, max_fiber_size: int = DEFAULT_FIBER_CAP
) -> BinRel:
    """The explicit fiber as a named binary relation."""
    elements, above, _ = _fiber_masks(s, index_size, max_fiber_size)
    names = tuple(
        "(" + ",".join(s.props[a] for a in e) + ")" for e in elements
    )
    pairs = frozenset(
        (i, j) for i in range(len(elements)) for j in iter_bits(above[i])
    )
    return BinRel(names, pairs)


def has_supremum(
    s: PRStructure,
    index_size: int,
    family: Sequence[tuple[int, ...]],
    max_fiber_size: int = DEFAULT_FIBER_CAP,
) -> bool:
    """Whether the given family of fiber elements has a supremum."""
    elements, above, _ = _fiber_masks(s, index_size, max_fiber_size)
    position = {e: i for i, e in enumerate(elements)}
    ubs = (1 << len(elements)) - 1
    for member in family:
        if tuple(member) not in position:
            raise MalformedInputError(f"not a fiber element: {member!r}")
        ubs &= above[position[tuple(member)]]
    return any(ubs & ~above[b] == 0 for b in iter_bits(ubs))


def is_fiber_complete(
    s: PRStructure,
    index_size: int,
    max_fiber_size: int = DEFAULT_FIBER_CAP,
    max_families: int = DEFAULT_FAMILY_CAP,
) -> tuple[bool, Optional[tuple[tuple[int, ...], ...]]]:
    """Exhaustively search all fiber subsets for one lacking a supremum.

    Families reduce to their image, so subsets of the fiber cover every
    set-indexed family, the empty one included.  Returns the first failing
    family in ascending subset order, or (True, None).
    """
    elements, above, _ = _fiber_masks(s, index_size, max_fiber_size)
    f = len(elements)
    if 1 << f > max_families:
        raise BudgetExceededError("families", max_families, 1 << f)
    full = (1 << f) - 1
    # upper-bound masks for all families, by lowest-member recurrence; the
    # empty family's bounds are the whole fiber, so completeness needs a bottom
    ubs = [0] * (1 << f)
    ubs[0] = full
    least_cache: dict[int, bool] = {}
    for fam_mask in range(1 << f):
        if fam_mask:
            low = fam_mask & -fam_mask
            ubs[fam_mask] = ubs[fam_mask ^ low] & above[low.bit_length() - 1]
        u = ubs[fam_mask]
        hit = least_cache.get(u)
        if hit is None:
            hit = any(u & ~above[b] == 0 for b in iter_bits(u))
            least_cache[u] = hit
        if not hit:
            family = tuple(elements[i] for i in iter_bits(fam_mask))
            return False, family
    return True, None


def nonrepresentable_function(
    pas: PAS, blocks: Sequence[Iterable[int]]
) -> Optional[dict[int, int]]:
    """First block-constant function no realizer implements, if any.

    Blocks must be pairwise disjoint and non-empty.  Assignments are scanned
    lexicographically over the carrier order; None means every block-constant
    function is representable, which requires the count |carrier|^#blocks to
    be at most |carrier|.
    """
    resolved = []
    seen: set[int] = set()
    for block in blocks:
        members = sorted({pas.check_element(x) for x in block})
        if not members:
            raise MalformedInputError("blocks must be non-empty")
        if seen.intersection(members):
            raise MalformedInputError("blocks must be pairwise disjoint")
        seen.update(members)
        resolved.append(members)
    n = pas.size
    for assignment in itertools.product(range(n), repeat=len(resolved)):
        goal = {
            x: assignment[i] for i, members in enumerate(resolved) for x in members
        }
        if not any(
            all(pas.table[r][x] == v for x, v in goal.items()) for r in range(n)
        ):
            return goal
    return None


@dataclass(frozen=True)
class CandidateRefutation:
    """Why one fiber element is not a supremum of the certified family."""

    candidate: tuple[int, ...]
    clause: str  # "not-upper-bound" | "not-least"
    family_index: Optional[int]
    refuter: Optional[tuple[int, ...]]


@dataclass
class IncompletenessCertificate:
    """A family with no supremum, certified candidate by candidate."""

    realizer: int
    family: tuple[tuple[int, ...], ...]
    refutations: tuple[CandidateRefutation, ...]


def incompleteness_witness(pas: PAS, r: int) -> IncompletenessCertificate:
    """Certify that the fiber over the carrier is incomplete.

    Requires a totally matching structure and |carrier|^|Im(r)| > |carrier|.
    The family consists of the point indicators over r's domain; every
    candidate either fails to be an upper bound (with the failing member
    recorded) or is beaten by a refuting upper bound it does not entail,
    built from a block-constant function no realizer implements.
    """
    pas.check_element(r)
    if not is_totally_matching(pas):
        raise PreconditionError("structure is not totally matching")
    n = pas.size
    image = sorted(pas.image(r))
    if n ** len(image) <= n:
        raise PreconditionError(
            f"counting hypothesis fails: {n}^{len(image)} <= {n}"
        )
    sigma = induce_sigma(pas)
    n_props = sigma.n_props
    full = sigma.full_real_mask
    rho = sigma.rho

    def entails_fiber(x: Sequence[int], y: Sequence[int]) -> bool:
        acc = full
        for a, b in zip(x, y):
            acc &= rho[a * n_props + b]
            if not acc:
                return False
        return True

    domain = list(pas.domain(r))
    family = tuple(
        tuple((1 << a) if x == a else 0 for x in range(n)) for a in domain
    )
    sgl = tuple(
        (1 << pas.table[r][x]) if pas.table[r][x] is not None else 0
        for x in range(n)
    )
    refutations = []
    for candidate in itertools.product(range(n_props), repeat=n):
        bad = next(
            (k for k, member in enumerate(family) if not entails_fiber(member, candidate)),
            None,
        )
        if bad is not None:
            refutations.append(
                CandidateRefutation(candidate, "not-upper-bound", bad, None)
            )
            continue
        if not entails_fiber(candidate, sgl):
            refutations.append(CandidateRefutation(candidate, "not-least", None, sgl))
            continue
        # merge the candidate's values along r into one block per image point
        blocks = {b: 0 for b in image}
        for a in domain:
            blocks[pas.table[r][a]] |= candidate[a]
        union = 0
        for b in image:
            if blocks[b] == 0 or blocks[b] & union:
                raise TheoremViolation("candidate blocks must be disjoint and non-empty")
            union |= blocks[b]
        goal = nonrepresentable_function(
            pas, [list(iter_bits(blocks[b])) for b in image]
        )
        if goal is None:
            raise TheoremViolation("a block-constant function had to be missing")
        refuter = tuple(
            _image_mask(goal, candidate[a]) if pas.table[r][a] is not None else 0
            for a in range(n)
        )
        if any(not entails_fiber(member, refuter) for member in family):
            raise TheoremViolation("refuter must bound the family")
        if entails_fiber(candidate, refuter):
            raise TheoremViolation("candidate must not entail the refuter")
        refutations.append(CandidateRefutation(candidate, "not-least", None, refuter))
    return IncompletenessCertificate(r, family, tuple(refutations))


def _image_mask(goal: dict[int, int], source_mask: int) -> int:
    mask = 0
    for x in iter_bits(source_mask):
        mask |= 1 << goal[x]
    return mask
