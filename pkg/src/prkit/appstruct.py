"""Finite partial applicative structures and the structures they induce.

A partial applicative structure is a finite carrier with a partial binary
operation, stored as a square table with ``None`` marking undefined entries.
Each element r represents the partial unary function x -> r.x; the induced
proposition/realizer structure takes all carrier subsets as propositions,
the carrier itself as realizers, and the arrow set A => B (realizers mapping
all of A into B) as each cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import PRStructure, iter_bits
from .errors import (
    BudgetExceededError,
    MalformedInputError,
    PreconditionError,
    TheoremViolation,
)

__all__ = [
    "PAS",
    "SubPASPair",
    "apply",
    "arrow_set",
    "subset_label",
    "induce_sigma",
    "pas_preorder_witness",
    "orbit_condition",
    "check_orbit_theorem",
    "is_totally_matching",
    "magma_posetal_check",
    "find_pairing",
    "induce_nested",
    "induce_relative",
]

SIGMA_CARRIER_CAP = 12
NESTED_CARRIER_CAP = 8
MAX_INDUCED_PROPS = 1 << 12


@dataclass(frozen=True)
class PAS:
    """Finite carrier with a partial binary operation (None = undefined)."""

    carrier: tuple[str, ...]
    table: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self) -> None:
        n = len(self.carrier)
        if n == 0:
            raise MalformedInputError("carrier must be non-empty")
        if len(set(self.carrier)) != n:
            raise MalformedInputError("duplicate carrier names")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise MalformedInputError(f"table must be {n}x{n}")
        for row in self.table:
            for v in row:
                if v is not None and not 0 <= v < n:
                    raise MalformedInputError(f"table value out of range: {v!r}")

    @property
    def size(self) -> int:
        return len(self.carrier)

    def check_element(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < len(self.carrier):
            raise MalformedInputError(f"invalid carrier element: {x!r}")
        return x

    def element_id(self, name: str) -> int:
        try:
            return self.carrier.index(name)
        except ValueError:
            raise MalformedInputError(f"unknown carrier name: {name!r}") from None

    def is_total(self) -> bool:
        return all(v is not None for row in self.table for v in row)

    def domain(self, r: int) -> tuple[int, ...]:
        """Arguments on which r applies."""
        self.check_element(r)
        return tuple(x for x in range(self.size) if self.table[r][x] is not None)

    def image(self, r: int) -> frozenset[int]:
        """Values taken by the function represented by r."""
        self.check_element(r)
        return frozenset(v for v in self.table[r] if v is not None)


def apply(pas: PAS, x: int, y: int) -> Optional[int]:
    """x applied to y; None when undefined."""
    pas.check_element(x)
    pas.check_element(y)
    return pas.table[x][y]


def arrow_set(pas: PAS, sources: Iterable[int], targets: Iterable[int]) -> frozenset[int]:
    """Realizers mapping every source into the target set.

    The empty source set is mapped anywhere by everything, so the result is
    the whole carrier.
    """
    src = [pas.check_element(x) for x in sources]
    tgt = {pas.check_element(y) for y in targets}
    out = []
    for r in range(pas.size):
        row = pas.table[r]
        if all(row[a] is not None and row[a] in tgt for a in src):
            out.append(r)
    return frozenset(out)


def subset_label(names: Sequence[str], mask: int) -> str:
    """Stable display name for a subset given by a bitmask."""
    return "{" + ",".join(names[i] for i in iter_bits(mask)) + "}"


def induce_sigma(pas: PAS, cap: int = SIGMA_CARRIER_CAP) -> PRStructure:
    """The structure on all carrier subsets with arrow sets as cells.

    Propositions are ordered by subset bitmask, so proposition id equals the
    subset's mask over the carrier.
    """
    n = pas.size
    if n > cap:
        raise BudgetExceededError("carrier", cap, n)
    n_props = 1 << n
    props = tuple(subset_label(pas.carrier, m) for m in range(n_props))
    full = (1 << n) - 1
    # step[a][B] = realizers sending element a into subset B
    step = [[0] * n_props for _ in range(n)]
    for a in range(n):
        for r in range(n):
            t = pas.table[r][a]
            if t is None:
                continue
            bit = 1 << r
            t_bit = 1 << t
            for b_mask in range(n_props):
                if b_mask & t_bit:
                    step[a][b_mask] |= bit
    rho = []
    for a_mask in range(n_props):
        members = list(iter_bits(a_mask))
        for b_mask in range(n_props):
            acc = full
            for a in members:
                acc &= step[a][b_mask]
                if not acc:
                    break
            rho.append(acc)
    return PRStructure(props, pas.carrier, tuple(rho))


def pas_preorder_witness(
    pas: PAS,
) -> Optional[tuple[int, dict[tuple[int, int], int]]]:
    """Identity element plus per-pair composites, when they exist.

    Returns (i, comp) with i.a = a for every a and comp[(r, s)].a equal to
    s.(r.a) whenever the latter is defined; None when no such choices exist.
    Ties break to the least element id.
    """
    n = pas.size
    identity = None
    for i in range(n):
        if all(pas.table[i][a] == a for a in range(n)):
            identity = i
            break
    if identity is None:
        return None
    comp: dict[tuple[int, int], int] = {}
    for r in range(n):
        for s in range(n):
            required: dict[int, int] = {}
            for a in range(n):
                mid = pas.table[r][a]
                if mid is None:
                    continue
                out = pas.table[s][mid]
                if out is not None:
                    required[a] = out
            found = None
            for t in range(n):
                if all(pas.table[t][a] == v for a, v in required.items()):
                    found = t
                    break
            if found is None:
                return None
            comp[(r, s)] = found
    return identity, comp


def orbit_condition(pas: PAS, r: int, s: int) -> bool:
    """Fixed point at once, or an injective forward orbit into undefinedness.

    True when r.s = s, or when iterating r from s hits an undefined
    application before any value repeats.
    """
    pas.check_element(r)
    pas.check_element(s)
    if pas.table[r][s] == s:
        return True
    seen = set()
    x: Optional[int] = s
    while x is not None and x not in seen:
        seen.add(x)
        x = pas.table[r][x]
    return x is None


def _function_closure_ok(pas: PAS) -> bool:
    # Represented functions must compose up to extension, and the identity
    # must be represented, whenever the induced structure is preorderal.
    witness = pas_preorder_witness(pas)
    if witness is None:
        return True
    identity, _ = witness
    n = pas.size
    if any(pas.table[identity][a] != a for a in range(n)):
        return False
    for r in range(n):
        for s in range(n):
            composite = {
                a: pas.table[s][pas.table[r][a]]
                for a in range(n)
                if pas.table[r][a] is not None
                and pas.table[s][pas.table[r][a]] is not None
            }
            if not any(
                all(pas.table[t][a] == v for a, v in composite.items())
                for t in range(n)
            ):
                return False
    return True


def check_orbit_theorem(pas: PAS, cap: int = SIGMA_CARRIER_CAP) -> bool:
    """Whether the acyclicity consequence of posetality held on this input.

    A False return would falsify the implementation, not the input: posetal
    induced structures must satisfy the orbit condition for every (r, s),
    and preorderal ones must compose represented functions up to extension.
    """
    from .order import is_posetal, is_preorderal

    sigma = induce_sigma(pas, cap=cap)
    if not _function_closure_ok(pas):
        return False
    if not is_preorderal(sigma):
        return True
    if not is_posetal(sigma):
        return True
    n = pas.size
    return all(
        orbit_condition(pas, r, s) for r in range(n) for s in range(n)
    )


def is_totally_matching(pas: PAS) -> bool:
    """Every element maps to every other under some realizer."""
    n = pas.size
    return all(
        any(pas.table[r][x] == y for r in range(n))
        for x in range(n)
        for y in range(n)
    )


def magma_posetal_check(pas: PAS, cap: int = SIGMA_CARRIER_CAP) -> bool:
    """For total tables: posetality is exactly right-projection.

    Returns whether x.y = y everywhere; raises TheoremViolation if the
    induced structure's posetality disagrees with that criterion.
    """
    if not pas.is_total():
        raise PreconditionError("operation must be total")
    from .order import is_posetal

    n = pas.size
    right_projection = all(
        pas.table[x][y] == y for x in range(n) for y in range(n)
    )
    if is_posetal(induce_sigma(pas, cap=cap)) != right_projection:
        raise TheoremViolation(
            "total table: posetality disagreed with the right-projection criterion"
        )
    return right_projection


def find_pairing(pas: PAS) -> Optional[tuple[int, int, int]]:
    """First (p, p0, p1) triple encoding and projecting pairs, if any."""
    n = pas.size
    for p, p0, p1 in itertools.product(range(n), repeat=3):
        ok = True
        for a0 in range(n):
            mid = pas.table[p][a0]
            if mid is None:
                ok = False
                break
            for a1 in range(n):
                code = pas.table[mid][a1]
                if code is None or pas.table[p0][code] != a0 or pas.table[p1][code] != a1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return p, p0, p1
    return None


@dataclass(frozen=True)
class SubPASPair:
    """A sub-structure embedded in a larger one, closed under application.

    ``embedding[x]`` is the ambient element representing sub element x.  The
    sub table must be exactly the restriction of the ambient table: an
    application is defined in the sub iff it is defined on the embedded
    elements, and then the values correspond (which forces the ambient value
    back into the embedded image).
    """

    sub: PAS
    sup: PAS
    embedding: tuple[int, ...]

    def __post_init__(self) -> None:
        k = self.sub.size
        if len(self.embedding) != k:
            raise MalformedInputError("embedding must cover the sub carrier")
        for e in self.embedding:
            self.sup.check_element(e)
        if len(set(self.embedding)) != k:
            raise MalformedInputError("embedding must be injective")
        for x in range(k):
            for y in range(k):
                inside = self.sub.table[x][y]
                outside = self.sup.table[self.embedding[x]][self.embedding[y]]
                expected = None if inside is None else self.embedding[inside]
                if outside != expected:
                    raise MalformedInputError(
                        "embedding is not a subalgebra: application of "
                        f"({self.sub.carrier[x]!r}, {self.sub.carrier[y]!r}) "
                        "disagrees with the ambient table"
                    )

    def embedded_mask(self) -> int:
        m = 0
        for e in self.embedding:
            m |= 1 << e
        return m


def _relative_cell(sp: SubPASPair, src_mask: int, tgt_mask: int) -> int:
    """Sub realizers (as a sub-carrier bitmask) mapping src into tgt in the ambient."""
    table = sp.sup.table
    acc = 0
    for x in range(sp.sub.size):
        row = table[sp.embedding[x]]
        if all(
            row[a] is not None and tgt_mask >> row[a] & 1 for a in iter_bits(src_mask)
        ):
            acc |= 1 << x
    return acc


def induce_relative(sp: SubPASPair, cap: int = NESTED_CARRIER_CAP) -> PRStructure:
    """Ambient subsets as propositions, sub elements as realizers."""
    m = sp.sup.size
    if m > cap:
        raise BudgetExceededError("carrier", cap, m)
    n_props = 1 << m
    props = tuple(subset_label(sp.sup.carrier, mask) for mask in range(n_props))
    rho = tuple(
        _relative_cell(sp, a_mask, b_mask)
        for a_mask in range(n_props)
        for b_mask in range(n_props)
    )
    return PRStructure(props, sp.sub.carrier, rho)


def induce_nested(sp: SubPASPair, cap: int = NESTED_CARRIER_CAP) -> PRStructure:
    """Propositions are nested subset pairs; realizers track both levels.

    A proposition is a pair (I, J) with I a subset of the embedded image and
    J an ambient subset containing I.  A sub realizer witnesses
    (I, J) -> (I', J') when it maps I into I' and J into J' in the ambient
    structure.  The source text this follows is ambiguous about which arrow
    sets are intersected; this reading tracks both levels, matching the
    nested-realizability shape.
    """
    m = sp.sup.size
    if m > cap:
        raise BudgetExceededError("carrier", cap, m)
    image = sp.embedded_mask()
    pairs: list[tuple[int, int]] = []
    for j_mask in range(1 << m):
        inner = j_mask & image
        # enumerate subsets of inner (including empty) in ascending order
        i_mask = 0
        while True:
            pairs.append((i_mask, j_mask))
            if i_mask == inner:
                break
            i_mask = (i_mask - inner) & inner
    pairs.sort()
    if len(pairs) > MAX_INDUCED_PROPS:
        raise BudgetExceededError("induced propositions", MAX_INDUCED_PROPS, len(pairs))
    props = tuple(
        "("
        + subset_label(sp.sup.carrier, i_mask)
        + ","
        + subset_label(sp.sup.carrier, j_mask)
        + ")"
        for i_mask, j_mask in pairs
    )
    rho = []
    for i_mask, j_mask in pairs:
        for i2_mask, j2_mask in pairs:
            rho.append(
                _relative_cell(sp, i_mask, i2_mask)
                & _relative_cell(sp, j_mask, j2_mask)
            )
    return PRStructure(props, sp.sub.carrier, tuple(rho))
