"""Named example structures and exhaustive/seeded generators.

The exhaustive generators enumerate labeled tables in lexicographic order
(cells row-major, cell values ascending), so streams are reproducible and
duplicate-free.  Random generators draw from ``random.Random(seed)`` only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Union

from .appstruct import PAS
from .core import BinRel, PRStructure
from .errors import MalformedInputError, PreconditionError

__all__ = [
    "GeneratorSpec",
    "sigma_from_bin",
    "sigma_n",
    "two_element_lattical",
    "all_pr_structures",
    "all_pas",
    "random_pr_structures",
    "random_pas",
    "enumerate_structures",
]


def sigma_from_bin(b: BinRel) -> PRStructure:
    """The single-realizer structure whose table is the relation's indicator."""
    n = len(b.carrier)
    rho = tuple(
        1 if (i, j) in b.pairs else 0 for i in range(n) for j in range(n)
    )
    return PRStructure(b.carrier, ("*",), rho)


def sigma_n(n: int) -> PRStructure:
    """Chain structure on {1..n} whose degree equals n.

    Cell (i, j) holds {i..n} on the diagonal, {i} above it (i < j), and is
    empty below it.
    """
    if n < 1:
        raise PreconditionError(f"sigma_n needs n >= 1, got {n}")
    names = tuple(str(i) for i in range(1, n + 1))
    rho = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                mask = 0
                for x in range(i, n + 1):
                    mask |= 1 << (x - 1)
            elif i < j:
                mask = 1 << (i - 1)
            else:
                mask = 0
            rho.append(mask)
    return PRStructure(names, names, tuple(rho))


def two_element_lattical() -> PRStructure:
    """Two propositions, three realizers; lattical fibers, degree three."""
    props = ("bot", "top")
    reals = ("b", "i", "t")
    b, i, t = 1, 2, 4
    rho = (
        b | i,  # (bot, bot)
        b | t,  # (bot, top)
        0,      # (top, bot)
        i | t,  # (top, top)
    )
    return PRStructure(props, reals, rho)


def _prop_names(k: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(k))


def _real_names(k: int) -> tuple[str, ...]:
    return tuple(f"r{i}" for i in range(k))


def _carrier_names(k: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(k))


def all_pr_structures(n_props: int, n_reals: int) -> Iterator[PRStructure]:
    """Every labeled structure with the given sizes, lexicographic by table."""
    if n_props < 1 or n_reals < 1:
        raise PreconditionError("sizes must be positive")
    props = _prop_names(n_props)
    reals = _real_names(n_reals)
    cells = n_props * n_props
    for table in itertools.product(range(1 << n_reals), repeat=cells):
        yield PRStructure(props, reals, table)


def all_pas(n: int) -> Iterator[PAS]:
    """Every labeled partial binary operation on n elements.

    Cell values run None, 0, .., n-1; tables in row-major lexicographic
    order, so there are (n+1)^(n*n) of them.
    """
    if n < 1:
        raise PreconditionError("carrier size must be positive")
    names = _carrier_names(n)
    values: tuple[Union[int, None], ...] = (None,) + tuple(range(n))
    for flat in itertools.product(values, repeat=n * n):
        table = tuple(tuple(flat[x * n + y] for y in range(n)) for x in range(n))
        yield PAS(names, table)


def random_pr_structures(
    max_props: int, max_reals: int, seed: int, count: int
) -> Iterator[PRStructure]:
    """``count`` structures with sizes drawn uniformly up to the bounds."""
    if max_props < 1 or max_reals < 1:
        raise PreconditionError("bounds must be positive")
    rng = random.Random(seed)
    for _ in range(count):
        p = rng.randint(1, max_props)
        r = rng.randint(1, max_reals)
        cells = tuple(rng.randrange(1 << r) for _ in range(p * p))
        yield PRStructure(_prop_names(p), _real_names(r), cells)


def random_pas(
    max_carrier: int, seed: int, count: int, total: bool = False
) -> Iterator[PAS]:
    """``count`` partial (or total, if asked) operations, sizes up to the bound."""
    if max_carrier < 1:
        raise PreconditionError("bounds must be positive")
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_carrier)
        choices: list[Union[int, None]] = list(range(n))
        if not total:
            choices.append(None)
        table = tuple(
            tuple(rng.choice(choices) for _ in range(n)) for _ in range(n)
        )
        yield PAS(_carrier_names(n), table)


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate: exhaustive or seeded-random, structures or operations."""

    kind: str  # "exhaustive" | "random"
    target: str  # "pr" | "pas"
    n_props: int = 0
    n_reals: int = 0
    carrier: int = 0
    seed: int = 0
    count: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("exhaustive", "random"):
            raise MalformedInputError(f"unknown generator kind: {self.kind!r}")
        if self.target not in ("pr", "pas"):
            raise MalformedInputError(f"unknown generator target: {self.target!r}")
        if self.target == "pr" and (self.n_props < 1 or self.n_reals < 1):
            raise MalformedInputError("pr generation needs positive n_props/n_reals")
        if self.target == "pas" and self.carrier < 1:
            raise MalformedInputError("pas generation needs a positive carrier size")
        if self.kind == "random" and self.count is None:
            raise MalformedInputError("random generation needs a count limit")


def enumerate_structures(spec: GeneratorSpec) -> Iterator[Union[PRStructure, PAS]]:
    """Stream structures according to ``spec``; reproducible across runs."""
    if spec.kind == "exhaustive":
        if spec.target == "pr":
            stream: Iterator[Union[PRStructure, PAS]] = all_pr_structures(
                spec.n_props, spec.n_reals
            )
        else:
            stream = all_pas(spec.carrier)
        if spec.count is not None:
            stream = itertools.islice(stream, spec.count)
        return stream
    if spec.target == "pr":
        return random_pr_structures(
            spec.n_props, spec.n_reals, spec.seed, spec.count or 0
        )
    return random_pas(spec.carrier, spec.seed, spec.count or 0)
