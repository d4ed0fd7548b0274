"""Canonical antichain representation, equivalence, and degree.

Every realizer is identified with the set of proposition pairs it witnesses.
Dropping realizers whose pair set is contained in another's never changes
any indexed entailment, so the inclusion-maximal distinct pair sets form a
canonical representative of the structure's equivalence class: an antichain
under inclusion, independent of how the realizers were enumerated.  Its size
is the least realizer count among equivalent structures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import BinRel, PRStructure, entails, entails_pairset, iter_bits
from .errors import PreconditionError

__all__ = [
    "CanonicalForm",
    "reduce_dominated",
    "canonicalize",
    "canonical_pair_sets",
    "structure_of",
    "compare",
    "equivalent",
    "degree",
    "is_p_structure",
    "pumping_structures",
    "observed_pointwise_cutoff",
]


@dataclass(frozen=True)
class CanonicalForm:
    """Propositions plus the antichain of maximal realized pair sets.

    Antichain members are bitmasks over the row-major proposition pairs,
    stored in ascending numeric order.
    """

    props: tuple[str, ...]
    antichain: tuple[int, ...]

    @property
    def n_props(self) -> int:
        return len(self.props)

    def member_pairs(self, member: int) -> tuple[tuple[int, int], ...]:
        n = len(self.props)
        return tuple(divmod(bit, n) for bit in iter_bits(member))


def _preimage_masks(s: PRStructure) -> list[int]:
    """For each realizer, the bitmask of cells containing it."""
    masks = [0] * s.n_reals
    for idx, cell in enumerate(s.rho):
        for r in iter_bits(cell):
            masks[r] |= 1 << idx
    return masks


def _maximal_masks(masks: list[int]) -> list[int]:
    distinct = sorted(set(masks))
    return sorted(
        m
        for m in distinct
        if not any(m != other and m | other == other for other in distinct)
    )


def reduce_dominated(s: PRStructure) -> PRStructure:
    """Drop realizers whose witnessed pair set sits inside another's.

    Duplicates collapse to the least-id representative; if nothing is
    witnessed at all, a single realizer survives.
    """
    masks = _preimage_masks(s)
    maximal = set(_maximal_masks(masks))
    survivors = []
    seen = set()
    for r, m in enumerate(masks):
        if m in maximal and m not in seen:
            survivors.append(r)
            seen.add(m)
    keep = 0
    for r in survivors:
        keep |= 1 << r
    remap = {r: i for i, r in enumerate(survivors)}
    rho = []
    for cell in s.rho:
        m = 0
        for r in iter_bits(cell & keep):
            m |= 1 << remap[r]
        rho.append(m)
    return PRStructure(s.props, tuple(s.reals[r] for r in survivors), tuple(rho))


def canonicalize(s: PRStructure) -> CanonicalForm:
    """The inclusion-maximal realized pair sets, as a sorted antichain."""
    return CanonicalForm(s.props, tuple(_maximal_masks(_preimage_masks(s))))


def canonical_pair_sets(s: PRStructure) -> frozenset[frozenset[tuple[str, str]]]:
    """Canonical antichain with pairs spelled as proposition names.

    Name-based, so structures listing the same propositions in different
    orders compare correctly.
    """
    cf = canonicalize(s)
    return frozenset(
        frozenset((cf.props[a], cf.props[b]) for a, b in cf.member_pairs(member))
        for member in cf.antichain
    )


def structure_of(cf: CanonicalForm) -> PRStructure:
    """Rebuild a structure whose realizers are the antichain members."""
    n = cf.n_props
    reals = tuple(f"c{i}" for i in range(len(cf.antichain)))
    rho = [0] * (n * n)
    for i, member in enumerate(cf.antichain):
        for bit in iter_bits(member):
            rho[bit] |= 1 << i
    return PRStructure(cf.props, reals, tuple(rho))


def compare(s1: PRStructure, s2: PRStructure) -> str:
    """"equivalent", "proposition-mismatch", or "antichain-mismatch"."""
    if set(s1.props) != set(s2.props):
        return "proposition-mismatch"
    if canonical_pair_sets(s1) != canonical_pair_sets(s2):
        return "antichain-mismatch"
    return "equivalent"


def equivalent(s1: PRStructure, s2: PRStructure) -> bool:
    """Same propositions and the same indexed entailments over every index set."""
    return compare(s1, s2) == "equivalent"


def degree(s: PRStructure) -> int:
    """Least realizer count among equivalent structures: the antichain size."""
    return len(canonicalize(s).antichain)


def is_p_structure(s: PRStructure) -> bool:
    """True when one realizer suffices, i.e. entailment is fully pointwise."""
    return degree(s) == 1


def _pair_set_structure(
    b: BinRel, members: list[frozenset[tuple[int, int]]], labels: list[str]
) -> PRStructure:
    n = len(b.carrier)
    rho = [0] * (n * n)
    for i, member in enumerate(members):
        for a, c in member:
            rho[a * n + c] |= 1 << i
    return PRStructure(b.carrier, tuple(labels), tuple(rho))


def _pair_label(b: BinRel, pair: tuple[int, int]) -> str:
    return f"{b.carrier[pair[0]]}->{b.carrier[pair[1]]}"


def pumping_structures(b: BinRel, n: int) -> tuple[PRStructure, PRStructure]:
    """Structures that behave pointwise only below a size cutoff.

    The first takes all subsets of the relation with fewer than n pairs as
    realizers; the second takes every one-pair deletion.  Over pair sets
    drawn from the relation, the first stops behaving pointwise at size n
    and the second at the full relation.
    """
    if n <= 1:
        raise PreconditionError(
            f"cutoff must be at least 2, got {n} (realizers would be degenerate)"
        )
    pairs = sorted(b.pairs)
    if not pairs:
        raise PreconditionError("relation must be non-empty")

    def label(member: frozenset[tuple[int, int]]) -> str:
        return "{" + ",".join(_pair_label(b, p) for p in sorted(member)) + "}"

    small: list[frozenset[tuple[int, int]]] = []
    for k in range(min(n, len(pairs) + 1)):
        small.extend(frozenset(c) for c in itertools.combinations(pairs, k))
    deletions = [frozenset(b.pairs - {p}) for p in pairs]
    first = _pair_set_structure(b, small, [label(m) for m in small])
    second = _pair_set_structure(b, deletions, [label(m) for m in deletions])
    return first, second


def observed_pointwise_cutoff(s: PRStructure, max_size: int | None = None) -> int | None:
    """Smallest pair-set size where indexed entailment stops being pointwise.

    Scans every subset of proposition pairs by ascending size and reports the
    first size at which some subset's uniform entailment differs from the
    conjunction of its pointwise entailments; None when no size up to the
    bound shows a difference.
    """
    n = s.n_props
    all_pairs = [(a, b) for a in range(n) for b in range(n)]
    top = len(all_pairs) if max_size is None else min(max_size, len(all_pairs))
    for size in range(1, top + 1):
        for subset in itertools.combinations(all_pairs, size):
            uniform = entails_pairset(s, subset)
            pointwise = all(entails(s, a, b) for a, b in subset)
            if uniform != pointwise:
                return size
    return None
