"""
Small finite abelian groups given by an explicit composition law.

Class groups and their quotients here have at most a few dozen elements,
so everything is done from a Cayley table: element orders, generated
subgroups, quotients with canonical coset representatives, and the
decomposition into a direct product of cyclic subgroups.

"""

from __future__ import annotations

import logging
from math import lcm
from typing import Any, Callable, Generic, Hashable, Iterable, Sequence, TypeVar

from .exceptions import DomainError, InternalConsistencyError

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)


class FiniteAbelianGroup(Generic[T]):
    """
    A finite abelian group over a sorted list of comparable elements.

    The operation is evaluated once per pair and cached in a table; the
    element list is kept in sorted order so that iteration, coset
    representatives and decompositions are deterministic.

    """

    def __init__(
        self, elements: Iterable[T], operation: Callable[[T, T], T], identity: T
    ) -> None:
        self.elements: list[T] = sorted(set(elements))  # type: ignore[type-var]
        self.identity = identity
        self._index = {x: i for i, x in enumerate(self.elements)}
        if identity not in self._index:
            raise DomainError(f"Identity {identity} is not a group element")
        self._table = [[operation(x, y) for y in self.elements] for x in self.elements]
        for row in self._table:
            for z in row:
                if z not in self._index:
                    raise InternalConsistencyError(f"Operation leaves the set: {z}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):  # type: ignore[no-untyped-def]
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        return f"<{type(self).__name__} order={len(self)}>"

    def multiply(self, x: T, y: T) -> T:
        return self._table[self._index[x]][self._index[y]]

    def power(self, x: T, k: int) -> T:
        k %= self.order(x)
        result, base = self.identity, x
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def inverse(self, x: T) -> T:
        return self.power(x, -1)

    def order(self, x: T) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.multiply(y, x)
            k += 1
        return k

    def exponent(self) -> int:
        return lcm(*(self.order(x) for x in self.elements)) if self.elements else 1

    def subgroup(self, generators: Iterable[T]) -> frozenset[T]:
        """Return the subgroup generated by a set of elements."""
        members = {self.identity}
        frontier = [self.identity]
        gens = [g for g in set(generators) if g != self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.multiply(x, g)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return frozenset(members)

    def quotient(self, kernel: Iterable[T]) -> QuotientGroup[T]:
        return QuotientGroup(self, self.subgroup(kernel))

    def is_cyclic(self) -> bool:
        return any(self.order(x) == len(self) for x in self.elements)

    def invariants(self) -> list[int]:
        """Orders of the cyclic factors of the canonical decomposition."""
        decomposition = self.cyclic_decomposition()
        if decomposition is None:
            raise InternalConsistencyError(
                "Abelian group without a cyclic decomposition"
            )
        return [order for _, order in decomposition]

    def cyclic_decomposition(
        self,
        candidates: Iterable[T] | None = None,
        preference: Callable[[T], Any] | None = None,
    ) -> list[tuple[T, int]] | None:
        """
        Write the group as an internal direct product of cyclic subgroups.

        Returns (generator, order) pairs with non-increasing orders. When
        candidates are given every generator is drawn from them, and None
        is returned if they do not support a decomposition. Among elements of
        equal order the search tries them by preference, then by position.

        """
        if candidates is None:
            pool = list(self.elements)
        else:
            pool = sorted(set(candidates))  # type: ignore[type-var]
        pool = [x for x in pool if x != self.identity and x in self._index]
        rank = preference or (lambda x: 0)
        pool.sort(key=lambda x: (-self.order(x), rank(x), self._index[x]))
        result = self._decompose(frozenset([self.identity]), pool, [], len(self))
        if result is None:
            logger.debug(
                "No cyclic decomposition of %r inside %i candidates", self, len(pool)
            )
        return result

    def _decompose(
        self,
        current: frozenset[T],
        pool: Sequence[T],
        chosen: list[tuple[T, int]],
        target: int,
    ) -> list[tuple[T, int]] | None:
        if len(current) == target:
            return list(chosen)
        ceiling = chosen[-1][1] if chosen else target
        for x in pool:
            k = self.order(x)
            if k > ceiling or target % (len(current) * k):
                continue
            cyclic = self.subgroup([x])
            if cyclic & current != {self.identity}:
                continue
            grown = self.subgroup(list(current) + [x])
            result = self._decompose(grown, pool, chosen + [(x, k)], target)
            if result is not None:
                return result
        return None

    def restrict(self, subset: Iterable[T]) -> FiniteAbelianGroup[T]:
        """Return a subgroup as a group in its own right."""
        members = frozenset(subset)
        return FiniteAbelianGroup(members, self.multiply, self.identity)


class QuotientGroup(FiniteAbelianGroup[T]):
    """
    The quotient of a group by a subgroup.

    Each coset is named by its least element, so elements of the quotient
    are elements of the parent group.

    """

    def __init__(self, parent: FiniteAbelianGroup[T], kernel: frozenset[T]) -> None:
        self.parent = parent
        self.kernel = kernel
        self._representative: dict[T, T] = {}
        for x in parent.elements:
            if x not in self._representative:
                coset = [parent.multiply(x, k) for k in kernel]
                rep = min(coset)  # type: ignore[type-var]
                for y in coset:
                    self._representative[y] = rep
        super().__init__(
            set(self._representative.values()),
            lambda x, y: self.project(parent.multiply(x, y)),
            self.project(parent.identity),
        )

    def project(self, x: T) -> T:
        """Map an element of the parent group onto its coset representative."""
        return self._representative[x]

    def coset(self, x: T) -> frozenset[T]:
        rep = self.project(x)
        return frozenset(y for y, r in self._representative.items() if r == rep)
