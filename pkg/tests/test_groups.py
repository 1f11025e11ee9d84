from __future__ import annotations

import itertools

import pytest

from selective_orders.exceptions import DomainError, InternalConsistencyError
from selective_orders.groups import FiniteAbelianGroup


def cyclic(n: int) -> FiniteAbelianGroup[int]:
    return FiniteAbelianGroup(range(n), lambda x, y: (x + y) % n, 0)


def z2_z4() -> FiniteAbelianGroup[tuple[int, int]]:
    return FiniteAbelianGroup(
        itertools.product(range(2), range(4)),
        lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 4),
        (0, 0),
    )


class TestFiniteAbelianGroup:
    def test_orders(self) -> None:
        G = cyclic(12)
        assert len(G) == 12
        assert G.order(0) == 1
        assert G.order(6) == 2
        assert G.order(5) == 12
        assert G.inverse(5) == 7
        assert G.power(5, 3) == 3
        assert G.exponent() == 12

    def test_subgroup(self) -> None:
        G = cyclic(12)
        assert G.subgroup([4]) == frozenset({0, 4, 8})
        assert G.subgroup([4, 6]) == frozenset({0, 2, 4, 6, 8, 10})
        assert G.subgroup([]) == frozenset({0})

    def test_invariants(self) -> None:
        assert cyclic(12).invariants() == [12]
        assert z2_z4().invariants() == [4, 2]
        assert z2_z4().exponent() == 4
        assert not z2_z4().is_cyclic()

    def test_cyclic_decomposition(self) -> None:
        assert z2_z4().cyclic_decomposition() == [((0, 1), 4), ((1, 0), 2)]

    def test_cyclic_decomposition__candidates(self) -> None:
        G = z2_z4()
        assert G.cyclic_decomposition([(1, 1)]) is None
        assert G.cyclic_decomposition([(1, 1), (1, 0)]) == [((1, 1), 4), ((1, 0), 2)]

    def test_cyclic_decomposition__preference(self) -> None:
        G = cyclic(12)
        assert G.cyclic_decomposition(preference=lambda x: -x) == [(11, 12)]

    def test_trivial_group(self) -> None:
        G = cyclic(1)
        assert G.cyclic_decomposition() == []
        assert G.exponent() == 1

    def test_bad_identity(self) -> None:
        with pytest.raises(DomainError):
            FiniteAbelianGroup(range(3), lambda x, y: (x + y) % 3, 5)

    def test_not_closed(self) -> None:
        with pytest.raises(InternalConsistencyError):
            FiniteAbelianGroup(range(3), lambda x, y: x + y, 0)

    def test_restrict(self) -> None:
        H = cyclic(12).restrict({0, 3, 6, 9})
        assert len(H) == 4
        assert H.is_cyclic()


class TestQuotientGroup:
    def test_project(self) -> None:
        Q = cyclic(12).quotient([4])
        assert Q.elements == [0, 1, 2, 3]
        assert Q.project(7) == 3
        assert Q.coset(7) == frozenset({3, 7, 11})
        assert Q.multiply(3, 3) == 2
        assert Q.is_cyclic()

    def test_quotient_by_everything(self) -> None:
        Q = cyclic(6).quotient([1])
        assert len(Q) == 1
        assert Q.identity == 0

    def test_quotient_of_quotient(self) -> None:
        Q = cyclic(12).quotient([6])
        assert len(Q) == 6
        R = Q.quotient([2])
        assert len(R) == 2
        assert R.project(Q.project(7)) == 1
