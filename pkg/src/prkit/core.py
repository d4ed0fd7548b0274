"""Finite proposition/realizer structures and their entailment relations.

A structure couples a finite proposition set P and a finite realizer set R
through a total table assigning to every ordered pair (a, b) of propositions
the set of realizers witnessing "a entails b".  Two equal-length families of
propositions stand in the indexed entailment relation when a single realizer
witnesses every component at once; the intersection defining that relation
only depends on the set of distinct component pairs, which is what makes the
pair-set variant below a faithful stand-in for families over arbitrary index
sets.

Propositions and realizers are dense integer indices internally; display
names are carried alongside and are the only identifiers that appear in
serialized documents.  Realizer sets are stored as bitmasks, one bit per
realizer, cells in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import MalformedInputError

__all__ = [
    "PRStructure",
    "FamilyPair",
    "BinRel",
    "pr_structure",
    "bin_rel",
    "iter_bits",
    "entails",
    "entails_indexed",
    "entails_pairset",
    "family_witnesses",
    "reindex",
    "rho_inverse",
    "is_partitioned",
]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_names(names: Sequence[str], what: str) -> None:
    if len(names) == 0:
        raise MalformedInputError(f"{what} set must be non-empty")
    if len(set(names)) != len(names):
        raise MalformedInputError(f"duplicate {what} names: {sorted(names)}")


@dataclass(frozen=True)
class PRStructure:
    """A finite proposition/realizer structure.

    ``rho[a * len(props) + b]`` is the bitmask of realizers witnessing that
    proposition ``a`` entails proposition ``b``.
    """

    props: tuple[str, ...]
    reals: tuple[str, ...]
    rho: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_names(self.props, "proposition")
        _check_names(self.reals, "realizer")
        n = len(self.props)
        if len(self.rho) != n * n:
            raise MalformedInputError(
                f"rho must have {n * n} cells, got {len(self.rho)}"
            )
        full = self.full_real_mask
        for idx, cell in enumerate(self.rho):
            if cell < 0 or cell & ~full:
                raise MalformedInputError(
                    f"cell {divmod(idx, n)} contains unknown realizer bits"
                )

    @property
    def n_props(self) -> int:
        return len(self.props)

    @property
    def n_reals(self) -> int:
        return len(self.reals)

    @property
    def full_real_mask(self) -> int:
        return (1 << len(self.reals)) - 1

    def check_prop(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < len(self.props):
            raise MalformedInputError(f"invalid proposition id: {a!r}")
        return a

    def check_real(self, r: int) -> int:
        if not isinstance(r, int) or not 0 <= r < len(self.reals):
            raise MalformedInputError(f"invalid realizer id: {r!r}")
        return r

    def prop_id(self, name: str) -> int:
        try:
            return self.props.index(name)
        except ValueError:
            raise MalformedInputError(f"unknown proposition name: {name!r}") from None

    def real_id(self, name: str) -> int:
        try:
            return self.reals.index(name)
        except ValueError:
            raise MalformedInputError(f"unknown realizer name: {name!r}") from None

    def cell(self, a: int, b: int) -> int:
        """Bitmask of realizers in the (a, b) cell."""
        self.check_prop(a)
        self.check_prop(b)
        return self.rho[a * len(self.props) + b]

    def cell_names(self, a: int, b: int) -> tuple[str, ...]:
        return tuple(self.reals[r] for r in iter_bits(self.cell(a, b)))

    def real_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.reals[r] for r in iter_bits(mask))

    def permute_realizers(self, perm: Sequence[int]) -> "PRStructure":
        """Rename realizer ids along ``perm`` (new id = position of old id)."""
        if sorted(perm) != list(range(len(self.reals))):
            raise MalformedInputError(f"not a realizer permutation: {perm!r}")
        new_reals = tuple(self.reals[perm[i]] for i in range(len(perm)))
        inverse = [0] * len(perm)
        for new, old in enumerate(perm):
            inverse[old] = new
        remapped = []
        for cell in self.rho:
            m = 0
            for r in iter_bits(cell):
                m |= 1 << inverse[r]
            remapped.append(m)
        return PRStructure(self.props, new_reals, tuple(remapped))


def pr_structure(
    props: Sequence[str],
    reals: Sequence[str],
    cells: Mapping[tuple[str, str], Iterable[str]],
) -> PRStructure:
    """Build a structure from display names; omitted cells are empty."""
    props = tuple(props)
    reals = tuple(reals)
    _check_names(props, "proposition")
    _check_names(reals, "realizer")
    p_index = {name: i for i, name in enumerate(props)}
    r_index = {name: i for i, name in enumerate(reals)}
    n = len(props)
    rho = [0] * (n * n)
    for (a, b), members in cells.items():
        if a not in p_index or b not in p_index:
            raise MalformedInputError(f"cell ({a!r}, {b!r}) names unknown propositions")
        m = 0
        for name in members:
            if name not in r_index:
                raise MalformedInputError(f"unknown realizer name: {name!r}")
            m |= 1 << r_index[name]
        rho[p_index[a] * n + p_index[b]] = m
    return PRStructure(props, reals, tuple(rho))


@dataclass(frozen=True)
class FamilyPair:
    """Two equal-length proposition families over a common finite index set."""

    phi: tuple[int, ...]
    psi: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.phi) != len(self.psi):
            raise MalformedInputError(
                f"family lengths differ: {len(self.phi)} vs {len(self.psi)}"
            )

    @property
    def index_size(self) -> int:
        return len(self.phi)

    def pair_set(self) -> frozenset[tuple[int, int]]:
        """The set of distinct component pairs, forgetting the indexing."""
        return frozenset(zip(self.phi, self.psi))


@dataclass(frozen=True)
class BinRel:
    """A finite carrier together with a binary relation on it."""

    carrier: tuple[str, ...]
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        _check_names(self.carrier, "carrier")
        n = len(self.carrier)
        for a, b in self.pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise MalformedInputError(f"relation pair out of range: {(a, b)}")

    def holds(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs


def bin_rel(carrier: Sequence[str], pairs: Iterable[tuple[str, str]]) -> BinRel:
    """Build a binary relation from display names."""
    carrier = tuple(carrier)
    index = {name: i for i, name in enumerate(carrier)}
    resolved = set()
    for a, b in pairs:
        if a not in index or b not in index:
            raise MalformedInputError(f"relation pair ({a!r}, {b!r}) not in carrier")
        resolved.add((index[a], index[b]))
    return BinRel(carrier, frozenset(resolved))


def _check_family(s: PRStructure, f: FamilyPair) -> None:
    for a in f.phi:
        s.check_prop(a)
    for b in f.psi:
        s.check_prop(b)


def family_witnesses(s: PRStructure, f: FamilyPair) -> frozenset[str]:
    """Realizers witnessing every component of the family at once.

    Empty index set: every realizer qualifies (empty intersection
    convention), so the result is the full realizer set.
    """
    _check_family(s, f)
    n = s.n_props
    acc = s.full_real_mask
    for a, b in zip(f.phi, f.psi):
        acc &= s.rho[a * n + b]
        if not acc:
            break
    return frozenset(s.real_names(acc))


def entails_indexed(s: PRStructure, f: FamilyPair) -> bool:
    """Indexed entailment: one realizer must witness every component.

    True on the empty index set by the empty intersection convention.
    """
    _check_family(s, f)
    n = s.n_props
    acc = s.full_real_mask
    for a, b in zip(f.phi, f.psi):
        acc &= s.rho[a * n + b]
        if not acc:
            return False
    return True


def entails(s: PRStructure, a: int, b: int) -> bool:
    """True when some realizer witnesses that ``a`` entails ``b``."""
    return s.cell(a, b) != 0


def entails_pairset(s: PRStructure, pairs: Iterable[tuple[int, int]]) -> bool:
    """Indexed entailment of any family whose component pairs are ``pairs``."""
    n = s.n_props
    acc = s.full_real_mask
    for a, b in pairs:
        s.check_prop(a)
        s.check_prop(b)
        acc &= s.rho[a * n + b]
        if not acc:
            return False
    return True


def reindex(f: FamilyPair, m: Sequence[int]) -> FamilyPair:
    """Precompose both families with ``m`` (new index i reads old index m[i])."""
    size = len(f.phi)
    for j in m:
        if not isinstance(j, int) or not 0 <= j < size:
            raise MalformedInputError(f"reindexing map value out of range: {j!r}")
    return FamilyPair(
        tuple(f.phi[j] for j in m),
        tuple(f.psi[j] for j in m),
    )


def rho_inverse(s: PRStructure, r: int) -> frozenset[tuple[int, int]]:
    """All proposition pairs whose cell contains realizer ``r``."""
    s.check_real(r)
    n = s.n_props
    bit = 1 << r
    return frozenset(
        (a, b) for a in range(n) for b in range(n) if s.rho[a * n + b] & bit
    )


def is_partitioned(s: PRStructure) -> bool:
    """True when every cell holds at most one realizer."""
    return all(cell & (cell - 1) == 0 for cell in s.rho)
