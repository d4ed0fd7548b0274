"""Independent brute-force referees for the library's fast paths.

Everything here is re-derived from raw tables with Python sets and loops:
intersections of name sets, explicit fiber enumerations, exhaustive subset
scans.  Nothing calls the library's witness searches, canonicalization, or
bitmask machinery, so these can referee them.

A family over any index set entails another exactly when the intersection
over its distinct component pairs is non-empty, so quantifying over subsets
of P x P (pair sets) quantifies over families over all index sets at once;
triples of families likewise reduce to subsets of P^3.
"""

from __future__ import annotations

import itertools

from prkit import PRStructure


def cell_set(s: PRStructure, a: int, b: int) -> frozenset[str]:
    return frozenset(s.cell_names(a, b))


def pairset_entails(s: PRStructure, pairs) -> bool:
    acc = set(s.reals)
    for a, b in pairs:
        acc &= cell_set(s, a, b)
        if not acc:
            return False
    return True


def all_pairs(s: PRStructure) -> list[tuple[int, int]]:
    n = s.n_props
    return [(a, b) for a in range(n) for b in range(n)]


def all_pair_subsets(s: PRStructure):
    pairs = all_pairs(s)
    for k in range(len(pairs) + 1):
        yield from itertools.combinations(pairs, k)


def pairset_signature(s: PRStructure) -> frozenset[frozenset[tuple[str, str]]]:
    """All entailed pair sets, spelled with proposition names.

    Two structures over the same propositions have equal indexed entailment
    over every index set iff their signatures are equal.
    """
    out = set()
    for subset in all_pair_subsets(s):
        if pairset_entails(s, subset):
            out.add(frozenset((s.props[a], s.props[b]) for a, b in subset))
    return frozenset(out)


def definitionally_equivalent(s1: PRStructure, s2: PRStructure) -> bool:
    return set(s1.props) == set(s2.props) and pairset_signature(
        s1
    ) == pairset_signature(s2)


def pointwise_everywhere(s: PRStructure) -> bool:
    """Indexed entailment equals the pointwise conjunction for every family."""
    return all(
        pairset_entails(s, subset)
        == all(pairset_entails(s, [(a, b)]) for a, b in subset)
        for subset in all_pair_subsets(s)
    )


def direct_reflexive(s: PRStructure) -> bool:
    n = s.n_props
    diagonal = [(a, a) for a in range(n)]
    return all(
        pairset_entails(s, subset)
        for k in range(len(diagonal) + 1)
        for subset in itertools.combinations(diagonal, k)
    )


def direct_transitive(s: PRStructure) -> bool:
    """Transitivity of every fiber, via subsets of proposition triples."""
    n = s.n_props
    triples = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
    for k in range(len(triples) + 1):
        for u in itertools.combinations(triples, k):
            first = [(a, b) for a, b, _ in u]
            second = [(b, c) for _, b, c in u]
            third = [(a, c) for a, _, c in u]
            if (
                pairset_entails(s, first)
                and pairset_entails(s, second)
                and not pairset_entails(s, third)
            ):
                return False
    return True


def direct_preorderal(s: PRStructure) -> bool:
    return direct_reflexive(s) and direct_transitive(s)


def base_antisymmetric(s: PRStructure) -> bool:
    n = s.n_props
    return not any(
        cell_set(s, a, b) and cell_set(s, b, a)
        for a in range(n)
        for b in range(n)
        if a != b
    )


def oracle_fiber(s: PRStructure, k: int):
    """Explicit fiber: elements and the entailment dictionary."""
    elems = list(itertools.product(range(s.n_props), repeat=k))
    leq = {
        (x, y): pairset_entails(s, set(zip(x, y))) for x in elems for y in elems
    }
    return elems, leq


def fiber_is_poset(s: PRStructure, k: int) -> bool:
    elems, leq = oracle_fiber(s, k)
    reflexive = all(leq[(x, x)] for x in elems)
    transitive = all(
        leq[(x, z)]
        for x in elems
        for y in elems
        if leq[(x, y)]
        for z in elems
        if leq[(y, z)]
    )
    antisymmetric = all(
        x == y for x in elems for y in elems if leq[(x, y)] and leq[(y, x)]
    )
    return reflexive and transitive and antisymmetric


def direct_posetal(s: PRStructure) -> bool:
    return direct_preorderal(s) and base_antisymmetric(s)


def direct_bounded(s: PRStructure) -> bool:
    """Fibers up to index size |P| have minima/maxima preserved by reindexing.

    The fiber over an index set the size of P contains the identity-style
    family, which is what forces preserved bounds to come from constant
    families; larger index sets add no new behaviour.
    """
    p = s.n_props
    fibers = {k: oracle_fiber(s, k) for k in range(1, p + 1)}
    bounds = {}
    for k, (elems, leq) in fibers.items():
        bottoms = [x for x in elems if all(leq[(x, y)] for y in elems)]
        tops = [y for y in elems if all(leq[(x, y)] for x in elems)]
        if not bottoms or not tops:
            return False
        bounds[k] = (bottoms, tops)
    for k in range(1, p + 1):
        elems_k, _ = fibers[k]
        for k2 in range(1, k + 1):
            elems_k2, leq2 = fibers[k2]
            for mapping in itertools.product(range(k), repeat=k2):
                for bottom in bounds[k][0]:
                    image = tuple(bottom[m] for m in mapping)
                    if not all(leq2[(image, y)] for y in elems_k2):
                        return False
                for top in bounds[k][1]:
                    image = tuple(top[m] for m in mapping)
                    if not all(leq2[(x, image)] for x in elems_k2):
                        return False
    return True


def direct_bounded_posetal(s: PRStructure) -> bool:
    return direct_posetal(s) and direct_bounded(s)
