"""Deciders for preorder/poset/bounded-poset behaviour of all fibers at once.

The fiber over a finite index set is the set of proposition families of that
length, ordered by indexed entailment.  Whether every fiber is a preorder
(resp. poset, bounded poset) reduces to finite witness searches on the
structure itself:

* preorder: one realizer on the whole diagonal, plus a composite realizer
  for every pair covering all chained cells;
* poset: preorder plus antisymmetry of the binary entailment;
* bounded poset: poset plus a proposition entailing everything through one
  realizer and a proposition entailed by everything through one realizer.

``check_fiber`` complements the witness route by brute-forcing one explicit
fiber: order flags, bounds, binary meets/joins, and whether reindexing maps
preserve what was found.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .core import PRStructure, entails, entails_pairset, is_partitioned, iter_bits
from .errors import BudgetExceededError, PreconditionError, TheoremViolation

__all__ = [
    "PreorderWitness",
    "BoundsWitness",
    "Monoid",
    "FiberReport",
    "ReindexIssue",
    "find_preorder_witness",
    "is_preorderal",
    "is_posetal",
    "find_bounds_witness",
    "is_bounded_posetal",
    "p_structure_sufficient_top",
    "p_structure_sufficient_bottom",
    "partitioned_posetal_p_check",
    "extract_monoid",
    "check_fiber",
    "fibers_lattical_up_to",
    "fibers_distributive_up_to",
]

DEFAULT_FIBER_CAP = 32
DEFAULT_REINDEX_DEPTH = 3


@dataclass
class PreorderWitness:
    """Identity realizer and one composite per realizer pair.

    ``composition[(r, s)]`` witnesses every cell reachable by chaining a
    cell containing r into a cell containing s.
    """

    identity: int
    composition: dict[tuple[int, int], int]


@dataclass
class BoundsWitness:
    """Least/greatest propositions with their uniform realizers."""

    bottom: int
    top: int
    b_real: int
    t_real: int


def _diagonal_mask(s: PRStructure) -> int:
    n = s.n_props
    acc = s.full_real_mask
    for a in range(n):
        acc &= s.rho[a * n + a]
        if not acc:
            break
    return acc


def find_preorder_witness(s: PRStructure) -> Optional[PreorderWitness]:
    """Search for the identity/composition witnesses; None means not preorderal.

    Tie-breaks pick the least realizer id.  Pairs with no chained cells are
    unconstrained; the identity is used for determinism.
    """
    diag = _diagonal_mask(s)
    if not diag:
        return None
    identity = next(iter_bits(diag))
    n = s.n_props
    n_reals = s.n_reals
    cells_of: list[list[tuple[int, int]]] = [[] for _ in range(n_reals)]
    by_first: list[dict[int, list[int]]] = [{} for _ in range(n_reals)]
    for idx, cell in enumerate(s.rho):
        a, b = divmod(idx, n)
        for r in iter_bits(cell):
            cells_of[r].append((a, b))
            by_first[r].setdefault(a, []).append(b)
    composition: dict[tuple[int, int], int] = {}
    for r in range(n_reals):
        for t in range(n_reals):
            acc = s.full_real_mask
            constrained = False
            for a, b in cells_of[r]:
                for c in by_first[t].get(b, ()):
                    constrained = True
                    acc &= s.rho[a * n + c]
                if not acc:
                    break
            if not constrained:
                composition[(r, t)] = identity
            elif not acc:
                return None
            else:
                composition[(r, t)] = next(iter_bits(acc))
    return PreorderWitness(identity, composition)


def is_preorderal(s: PRStructure) -> bool:
    """True when every fiber is a preorder."""
    return find_preorder_witness(s) is not None


def _antisymmetric(s: PRStructure) -> bool:
    n = s.n_props
    return all(
        not (s.rho[a * n + b] and s.rho[b * n + a])
        for a in range(n)
        for b in range(a + 1, n)
    )


def is_posetal(s: PRStructure) -> bool:
    """True when every fiber is a poset."""
    return is_preorderal(s) and _antisymmetric(s)


def _bottom_half(s: PRStructure) -> Optional[tuple[int, int]]:
    n = s.n_props
    for bot in range(n):
        acc = s.full_real_mask
        for a in range(n):
            acc &= s.rho[bot * n + a]
            if not acc:
                break
        if acc:
            return bot, next(iter_bits(acc))
    return None


def _top_half(s: PRStructure) -> Optional[tuple[int, int]]:
    n = s.n_props
    for top in range(n):
        acc = s.full_real_mask
        for a in range(n):
            acc &= s.rho[a * n + top]
            if not acc:
                break
        if acc:
            return top, next(iter_bits(acc))
    return None


def find_bounds_witness(s: PRStructure) -> Optional[BoundsWitness]:
    """Bottom/top propositions with single uniform realizers, least ids first."""
    bottom = _bottom_half(s)
    top = _top_half(s)
    if bottom is None or top is None:
        return None
    return BoundsWitness(bottom[0], top[0], bottom[1], top[1])


def is_bounded_posetal(s: PRStructure) -> bool:
    """True when every fiber is a poset with reindexing-stable bounds."""
    return is_posetal(s) and find_bounds_witness(s) is not None


def p_structure_sufficient_top(s: PRStructure) -> bool:
    """Uniformly singleton cells into the top proposition.

    A bounded-posetal structure satisfying this is forced down to a single
    realizer; callers may rely on the implication, which the test-suite
    asserts on every enumerated instance.
    """
    if not is_bounded_posetal(s):
        return False
    witness = find_bounds_witness(s)
    assert witness is not None
    n = s.n_props
    cells = [s.rho[a * n + witness.top] for a in range(n)]
    return all(c == cells[0] for c in cells) and cells[0].bit_count() == 1


def p_structure_sufficient_bottom(s: PRStructure) -> bool:
    """Mirror condition: uniformly singleton cells out of the bottom."""
    if not is_bounded_posetal(s):
        return False
    witness = find_bounds_witness(s)
    assert witness is not None
    n = s.n_props
    cells = [s.rho[witness.bottom * n + a] for a in range(n)]
    return all(c == cells[0] for c in cells) and cells[0].bit_count() == 1


def partitioned_posetal_p_check(s: PRStructure) -> bool:
    """Hypotheses of the partitioned route to a single realizer.

    True when the structure is partitioned, posetal, and every fiber has a
    minimum (witnessed by a uniform bottom realizer) or every fiber has a
    maximum (uniform top realizer).
    """
    if not (is_partitioned(s) and is_posetal(s)):
        return False
    return _bottom_half(s) is not None or _top_half(s) is not None


@dataclass
class Monoid:
    """Composition monoid carried by a partitioned preorderal structure.

    ``table[(u, v)]`` composes u after v.
    """

    elements: tuple[str, ...]
    unit: str
    table: dict[tuple[str, str], str]

    def combine(self, after: str, first: str) -> str:
        return self.table[(after, first)]


def extract_monoid(s: PRStructure, completion_budget: int = 1 << 20) -> Monoid:
    """Recover (witnessed realizers, composition, identity) as a monoid.

    Requires a partitioned preorderal structure.  Composites with at least
    one chained cell are pinned by the singleton cells; composites with no
    chained cell are unconstrained by entailment, so they are completed by a
    deterministic backtracking search for an associative table (first
    solution in lexicographic order — unconstrained spots can admit several
    law-abiding completions).  Raises TheoremViolation when no completion
    exists, since that would contradict the monoid guarantee.
    """
    if not is_partitioned(s):
        raise PreconditionError("structure is not partitioned")
    diag = _diagonal_mask(s)
    if not diag:
        raise PreconditionError("structure is not preorderal")
    n = s.n_props
    carrier_mask = 0
    for cell in s.rho:
        carrier_mask |= cell
    carrier = list(iter_bits(carrier_mask))
    unit = next(iter_bits(diag))
    cells_of: dict[int, list[tuple[int, int]]] = {r: [] for r in carrier}
    by_first: dict[int, dict[int, list[int]]] = {r: {} for r in carrier}
    for idx, cell in enumerate(s.rho):
        a, b = divmod(idx, n)
        for r in iter_bits(cell):
            cells_of[r].append((a, b))
            by_first[r].setdefault(a, []).append(b)
    value: dict[tuple[int, int], int] = {}
    free: list[tuple[int, int]] = []
    for r in carrier:
        for t in carrier:
            acc = s.full_real_mask
            constrained = False
            for a, b in cells_of[r]:
                for c in by_first[t].get(b, ()):
                    constrained = True
                    acc &= s.rho[a * n + c]
                if not acc:
                    break
            if not constrained:
                free.append((t, r))
            elif not acc:
                raise PreconditionError("structure is not preorderal")
            else:
                value[(t, r)] = next(iter_bits(acc))  # pinned: singleton cells

    def laws_hold(v: dict[tuple[int, int], int]) -> bool:
        for r in carrier:
            if v[(unit, r)] != r or v[(r, unit)] != r:
                return False
        return all(
            v[(x, v[(y, z)])] == v[(v[(x, y)], z)]
            for x in carrier
            for y in carrier
            for z in carrier
        )

    if len(carrier) ** len(free) > completion_budget:
        raise BudgetExceededError(
            "monoid completion", completion_budget, len(carrier) ** len(free)
        )
    solution = None
    for choice in itertools.product(carrier, repeat=len(free)):
        trial = dict(value)
        trial.update(zip(free, choice))
        if laws_hold(trial):
            solution = trial
            break
    if solution is None:
        raise TheoremViolation("no associative completion for extracted monoid")
    names = {r: s.reals[r] for r in carrier}
    table = {
        (names[t], names[r]): names[composite]
        for (t, r), composite in solution.items()
    }
    return Monoid(tuple(names[r] for r in carrier), names[unit], table)


@dataclass
class ReindexIssue:
    """A found bound/meet/join that a reindexing map failed to preserve."""

    kind: str
    mapping: tuple[int, ...]
    elements: tuple[str, ...]


@dataclass
class FiberReport:
    """Brute-force findings for one explicit fiber."""

    index_size: int
    size: int
    reflexive: bool
    transitive: bool
    antisymmetric: bool
    bottoms: tuple[tuple[str, ...], ...]
    tops: tuple[tuple[str, ...], ...]
    lattical: bool
    pairs_without_meet: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]
    pairs_without_join: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]
    reindex_issues: tuple[ReindexIssue, ...] = field(default_factory=tuple)
    pointwise_checked: bool = False


class _Fiber:
    """Explicit order data for one fiber: elements, up-sets, down-sets."""

    def __init__(self, s: PRStructure, index_size: int, pairset_mode: bool):
        self.elements: list[tuple[int, ...]] = list(
            itertools.product(range(s.n_props), repeat=index_size)
        )
        self.position = {e: i for i, e in enumerate(self.elements)}
        f = len(self.elements)
        n = s.n_props
        memo: dict[frozenset[tuple[int, int]], bool] = {}

        def leq(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
            if pairset_mode:
                key = frozenset(zip(x, y))
                hit = memo.get(key)
                if hit is None:
                    hit = entails_pairset(s, key)
                    memo[key] = hit
                return hit
            acc = s.full_real_mask
            for a, b in zip(x, y):
                acc &= s.rho[a * n + b]
                if not acc:
                    return False
            return True

        self.above = [0] * f  # above[x] = {y : x entails y}
        self.below = [0] * f  # below[y] = {x : x entails y}
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                if leq(x, y):
                    self.above[i] |= 1 << j
                    self.below[j] |= 1 << i
        self.full = (1 << f) - 1

    def meets(self, i: int, j: int) -> list[int]:
        common = self.below[i] & self.below[j]
        return [
            z for z in iter_bits(common) if common & ~self.below[z] == 0
        ]

    def joins(self, i: int, j: int) -> list[int]:
        common = self.above[i] & self.above[j]
        return [
            z for z in iter_bits(common) if common & ~self.above[z] == 0
        ]

    def is_meet(self, z: int, i: int, j: int) -> bool:
        common = self.below[i] & self.below[j]
        return bool(common >> z & 1) and common & ~self.below[z] == 0

    def is_join(self, z: int, i: int, j: int) -> bool:
        common = self.above[i] & self.above[j]
        return bool(common >> z & 1) and common & ~self.above[z] == 0

    def bottoms(self) -> list[int]:
        return [i for i in range(len(self.elements)) if self.above[i] == self.full]

    def tops(self) -> list[int]:
        return [i for i in range(len(self.elements)) if self.below[i] == self.full]


def _fiber_budget(s: PRStructure, index_size: int, cap: int) -> int:
    size = s.n_props**index_size
    if size > cap:
        raise BudgetExceededError("fiber size", cap, size)
    return size


def _names(s: PRStructure, element: tuple[int, ...]) -> tuple[str, ...]:
    return tuple(s.props[a] for a in element)


def _element_label(s: PRStructure, element: tuple[int, ...]) -> str:
    return "(" + ",".join(_names(s, element)) + ")"


def _check_pointwise_lattice_laws(
    s: PRStructure,
    fiber: _Fiber,
    base: _Fiber,
    meet_table: dict[tuple[int, int], list[int]],
    join_table: dict[tuple[int, int], list[int]],
) -> None:
    # Component-wise consequences of being a meet/join, against base meets
    # and joins where those exist.  Violations are implementation bugs.
    for (i, j), zs in meet_table.items():
        x, y = fiber.elements[i], fiber.elements[j]
        for z in zs:
            zt = fiber.elements[z]
            for pos in range(len(x)):
                for base_meet in base.meets(x[pos], y[pos]):
                    if not entails(s, zt[pos], base_meet):
                        raise TheoremViolation(
                            "fiber meet component does not entail the base meet"
                        )
    for (i, j), zs in join_table.items():
        x, y = fiber.elements[i], fiber.elements[j]
        for z in zs:
            zt = fiber.elements[z]
            for pos in range(len(x)):
                for base_join in base.joins(x[pos], y[pos]):
                    if not entails(s, base_join, zt[pos]):
                        raise TheoremViolation(
                            "base join does not entail the fiber join component"
                        )


def check_fiber(
    s: PRStructure,
    index_size: int,
    pairset_mode: bool = False,
    max_fiber_size: int = DEFAULT_FIBER_CAP,
    reindex_depth: int = DEFAULT_REINDEX_DEPTH,
) -> FiberReport:
    """Enumerate one fiber and report its order-theoretic behaviour.

    ``pairset_mode`` evaluates entailment through memoized pair sets instead
    of walking the family; results are identical.  Reindexing preservation is
    checked against every map from index sets of size up to
    ``min(index_size, reindex_depth)``.
    """
    if index_size < 0:
        raise PreconditionError("index size must be >= 0")
    _fiber_budget(s, index_size, max_fiber_size)
    fiber = _Fiber(s, index_size, pairset_mode)
    f = len(fiber.elements)
    reflexive = all(fiber.above[i] >> i & 1 for i in range(f))
    transitive = all(
        fiber.above[j] & ~fiber.above[i] == 0
        for i in range(f)
        for j in iter_bits(fiber.above[i])
    )
    antisymmetric = all(
        not (fiber.above[i] >> j & 1 and fiber.above[j] >> i & 1)
        for i in range(f)
        for j in range(i + 1, f)
    )
    meet_table: dict[tuple[int, int], list[int]] = {}
    join_table: dict[tuple[int, int], list[int]] = {}
    no_meet = []
    no_join = []
    for i in range(f):
        for j in range(i, f):
            ms = fiber.meets(i, j)
            js = fiber.joins(i, j)
            if ms:
                meet_table[(i, j)] = ms
            else:
                no_meet.append((i, j))
            if js:
                join_table[(i, j)] = js
            else:
                no_join.append((i, j))
    lattical = not no_meet and not no_join

    base = fiber if index_size == 1 else _Fiber(s, 1, pairset_mode)
    if lattical:
        _check_pointwise_lattice_laws(s, fiber, base, meet_table, join_table)

    issues: list[ReindexIssue] = []
    smaller: dict[int, _Fiber] = {}
    for k in range(1, min(index_size, reindex_depth) + 1):
        smaller[k] = fiber if k == index_size else _Fiber(s, k, pairset_mode)
    for k, target in sorted(smaller.items()):
        for mapping in itertools.product(range(index_size), repeat=k):

            def pull(i: int) -> int:
                e = fiber.elements[i]
                return target.position[tuple(e[m] for m in mapping)]

            for b in fiber.bottoms():
                if target.above[pull(b)] != target.full:
                    issues.append(
                        ReindexIssue(
                            "bottom", mapping, (_element_label(s, fiber.elements[b]),)
                        )
                    )
            for t in fiber.tops():
                if target.below[pull(t)] != target.full:
                    issues.append(
                        ReindexIssue(
                            "top", mapping, (_element_label(s, fiber.elements[t]),)
                        )
                    )
            for (i, j), zs in meet_table.items():
                for z in zs:
                    if not target.is_meet(pull(z), pull(i), pull(j)):
                        issues.append(
                            ReindexIssue(
                                "meet",
                                mapping,
                                (
                                    _element_label(s, fiber.elements[i]),
                                    _element_label(s, fiber.elements[j]),
                                    _element_label(s, fiber.elements[z]),
                                ),
                            )
                        )
            for (i, j), zs in join_table.items():
                for z in zs:
                    if not target.is_join(pull(z), pull(i), pull(j)):
                        issues.append(
                            ReindexIssue(
                                "join",
                                mapping,
                                (
                                    _element_label(s, fiber.elements[i]),
                                    _element_label(s, fiber.elements[j]),
                                    _element_label(s, fiber.elements[z]),
                                ),
                            )
                        )

    return FiberReport(
        index_size=index_size,
        size=f,
        reflexive=reflexive,
        transitive=transitive,
        antisymmetric=antisymmetric,
        bottoms=tuple(_names(s, fiber.elements[i]) for i in fiber.bottoms()),
        tops=tuple(_names(s, fiber.elements[i]) for i in fiber.tops()),
        lattical=lattical,
        pairs_without_meet=tuple(
            (_names(s, fiber.elements[i]), _names(s, fiber.elements[j]))
            for i, j in no_meet
        ),
        pairs_without_join=tuple(
            (_names(s, fiber.elements[i]), _names(s, fiber.elements[j]))
            for i, j in no_join
        ),
        reindex_issues=tuple(issues),
        pointwise_checked=lattical,
    )


def fibers_lattical_up_to(
    s: PRStructure,
    max_index_size: int,
    max_fiber_size: int = DEFAULT_FIBER_CAP,
) -> bool:
    """Bounded evidence that every fiber is a bounded lattice.

    Checks fibers of index size 1..max_index_size: poset flags, bounds,
    all binary meets/joins present, and no reindexing failures.  This is
    evidence up to the bound, not a decision procedure.
    """
    for k in range(1, max_index_size + 1):
        report = check_fiber(s, k, max_fiber_size=max_fiber_size)
        if not (
            report.reflexive
            and report.transitive
            and report.antisymmetric
            and report.lattical
            and report.bottoms
            and report.tops
            and not report.reindex_issues
        ):
            return False
    return True


def fibers_distributive_up_to(
    s: PRStructure,
    max_index_size: int,
    max_fiber_size: int = DEFAULT_FIBER_CAP,
) -> bool:
    """Bounded evidence that every fiber is a distributive lattice."""
    if not fibers_lattical_up_to(s, max_index_size, max_fiber_size):
        return False
    for k in range(1, max_index_size + 1):
        fiber = _Fiber(s, k, pairset_mode=False)
        f = len(fiber.elements)
        meet = {}
        join = {}
        for i in range(f):
            for j in range(f):
                ms = fiber.meets(i, j)
                js = fiber.joins(i, j)
                if len(ms) != 1 or len(js) != 1:
                    return False
                meet[(i, j)] = ms[0]
                join[(i, j)] = js[0]
        for x in range(f):
            for y in range(f):
                for z in range(f):
                    if meet[(x, join[(y, z)])] != join[(meet[(x, y)], meet[(x, z)])]:
                        return False
    return True
