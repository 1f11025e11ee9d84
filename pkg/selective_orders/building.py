"""
Vertices of one apartment of the affine building of SL_n over a local field.

A vertex is a homothety class of lattices, written as an integer vector
modulo the all-ones vector. Coordinates are always read in the basis
adapted to a splitting type: block i of a splitting (f_1, ..., f_g)
occupies positions f_1 + ... + f_(i-1) + 1 through f_1 + ... + f_i, so the
ring of integers of L embeds in the maximal order of a vertex exactly when
the vertex is constant on every block.

"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Iterator, Sequence

from .exceptions import DomainError, HypothesisError


@dataclass(frozen=True)
class HomothetyClass:
    """A vertex [a_1, ..., a_n], stored with minimum coordinate 0."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise DomainError("A homothety class needs at least one coordinate")
        low = min(self.coords)
        object.__setattr__(self, "coords", tuple(int(a) - low for a in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.coords) + "]"

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def shift_block(self, start: int, stop: int, amount: int) -> HomothetyClass:
        """Add a constant to the coordinates in positions [start, stop)."""
        coords = list(self.coords)
        for i in range(start, stop):
            coords[i] += amount
        return HomothetyClass(tuple(coords))


@dataclass(frozen=True)
class SplittingType:
    """The pairs (e_i, f_i) of the primes of L above a prime of K, in order."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        factors = tuple((int(e), int(f)) for e, f in self.factors)
        if not factors:
            raise DomainError("A splitting type needs at least one factor")
        if any(e < 1 or f < 1 for e, f in factors):
            raise DomainError(f"Ramification and inertia must be positive: {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def unramified(cls, inertia: Iterable[int]) -> SplittingType:
        return cls(tuple((1, f) for f in inertia))

    @property
    def n(self) -> int:
        return sum(e * f for e, f in self.factors)

    @property
    def g(self) -> int:
        return len(self.factors)

    @property
    def inertia(self) -> tuple[int, ...]:
        return tuple(f for _, f in self.factors)

    @property
    def is_unramified(self) -> bool:
        return all(e == 1 for e, _ in self.factors)

    @property
    def has_degree_one_factor(self) -> bool:
        return (1, 1) in self.factors

    @property
    def splits_completely(self) -> bool:
        return all(ef == (1, 1) for ef in self.factors)

    def require_unramified(self) -> None:
        if not self.is_unramified:
            raise HypothesisError(
                f"Hypothesis violation: prime ramified in L (splitting {self})"
            )

    def blocks(self) -> list[tuple[int, int]]:
        """Return the [start, stop) positions of each block."""
        self.require_unramified()
        bounds = list(itertools.accumulate(self.inertia, initial=0))
        return list(zip(bounds, bounds[1:]))

    def degree_one_first(self) -> SplittingType:
        """Reorder the factors so that an (e, f) = (1, 1) factor leads."""
        if not self.has_degree_one_factor:
            raise DomainError(f"{self} has no factor of degree one")
        rest = list(self.factors)
        rest.remove((1, 1))
        return SplittingType(((1, 1), *rest))

    def __str__(self) -> str:
        return "[" + ",".join(f"({e},{f})" for e, f in self.factors) + "]"


def canonicalize(raw: Sequence[int]) -> HomothetyClass:
    return HomothetyClass(tuple(raw))


def vertex_type(v: HomothetyClass) -> int:
    return sum(v.coords) % v.n


def _check_dimension(v: HomothetyClass, s: SplittingType) -> None:
    if v.n != s.n:
        raise DomainError(f"Dimension mismatch: vertex {v} against splitting {s}")


def contains_ring_of_integers(v: HomothetyClass, s: SplittingType) -> bool:
    """
    Whether the maximal order of v contains the local ring of integers of L.

    True exactly when the class is constant on every block of s.

    """
    s.require_unramified()
    _check_dimension(v, s)
    return all(len(set(v.coords[start:stop])) == 1 for start, stop in s.blocks())


def admissible_types(s: SplittingType) -> frozenset[int]:
    """Types of maximal orders containing the local ring of integers."""
    s.require_unramified()
    d = reduce(gcd, s.inertia)
    return frozenset(t * d % s.n for t in range(1, s.n // d + 1))


def chamber_vertices(s: SplittingType) -> list[HomothetyClass]:
    s.require_unramified()
    n = s.n
    return [
        HomothetyClass((1,) * start + (0,) * (n - start)) for start, _ in s.blocks()
    ]


def block_vertex(s: SplittingType, levels: Sequence[int]) -> HomothetyClass:
    """The class taking the value levels[i] on block i."""
    coords: list[int] = []
    for (start, stop), level in zip(s.blocks(), levels):
        coords.extend([level] * (stop - start))
    return HomothetyClass(tuple(coords))


def enumerate_containing_vertices(
    s: SplittingType, bound: int | None = None
) -> list[HomothetyClass]:
    """
    All canonical block-constant classes with coordinates in [0, bound).

    The bound defaults to n, which already realises every admissible type.

    """
    s.require_unramified()
    if bound is None:
        bound = s.n
    if bound < 1:
        raise DomainError(f"Enumeration bound must be positive, got {bound}")
    return [
        block_vertex(s, levels)
        for levels in itertools.product(range(bound), repeat=s.g)
        if min(levels) == 0
    ]


def type_distance(v1: HomothetyClass, v2: HomothetyClass) -> int:
    if v1.n != v2.n:
        raise DomainError(f"Dimension mismatch: {v1} and {v2}")
    return (vertex_type(v2) - vertex_type(v1)) % v1.n


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All ordered compositions of n into positive parts."""
    if n < 1:
        raise DomainError(f"Cannot compose {n}")
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts, size = [], 1
        for cut in cuts:
            if cut:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        yield tuple(parts)
