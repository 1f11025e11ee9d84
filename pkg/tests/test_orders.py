from __future__ import annotations

import pytest
from sympy import ImmutableMatrix, Rational, eye, zeros

from selective_orders.building import HomothetyClass, SplittingType
from selective_orders.exceptions import DomainError, HypothesisError
from selective_orders.ffarith import is_irreducible_ff
from selective_orders.orders import (
    OrderPattern,
    ValuationPattern,
    companion_matrix,
    intersect_patterns,
    local_module_basis,
    oracle_contains,
    pattern_contains,
    pattern_from_class,
    span_coordinates,
    unramified_generator,
    valuation,
)


def split(*inertia: int) -> SplittingType:
    return SplittingType.unramified(inertia)


class TestPatterns:
    def test_pattern_from_class(self) -> None:
        V = pattern_from_class(HomothetyClass((2, 1, 0)))
        assert V.bounds == ((0, 1, 2), (-1, 0, 1), (-2, -1, 0))
        assert V.vertex() == HomothetyClass((2, 1, 0))

    def test_origin(self) -> None:
        V = pattern_from_class(HomothetyClass((0, 0, 0, 0)))
        assert V.as_matrix() == zeros(4, 4)

    def test_block_shape(self) -> None:
        V = pattern_from_class(HomothetyClass((1, 1, 0, 0)))
        assert V[0, 3] == 1
        assert V[3, 0] == -1
        assert V[0, 1] == V[2, 3] == 0

    def test_invalid(self) -> None:
        with pytest.raises(DomainError):
            ValuationPattern(((0, 1), (0, 0)))
        with pytest.raises(DomainError):
            OrderPattern(((0, 1),))


class TestUnramifiedGenerator:
    def test_degree_one(self) -> None:
        C, h = unramified_generator(5, 1)
        assert C == ImmutableMatrix([[0]])
        assert h.degree == 1

    def test_quadratic(self) -> None:
        C, h = unramified_generator(3, 2)
        assert C == companion_matrix((1, 0, 1))
        assert C == ImmutableMatrix([[0, 1], [-1, 0]])
        assert [int(c) for c in h.coeffs] == [1, 0, 1]

    def test_quartic_over_F2(self) -> None:
        C, h = unramified_generator(2, 4)
        assert [int(c) for c in h.coeffs] == [1, 1, 0, 0, 1]
        assert is_irreducible_ff(h)
        assert C.shape == (4, 4)

    def test_bad_degree(self) -> None:
        with pytest.raises(DomainError):
            unramified_generator(3, 0)


class TestLocalModuleBasis:
    def test_completely_split(self) -> None:
        basis = local_module_basis(split(1, 1, 1), 7)
        assert len(basis) == 3
        for i, M in enumerate(basis):
            expected = zeros(3, 3)
            expected[i, i] = 1
            assert M == expected

    def test_inert_quadratic(self) -> None:
        basis = local_module_basis(split(2), 3)
        assert basis == [eye(2), ImmutableMatrix([[0, 1], [-1, 0]])]

    @pytest.mark.parametrize("inertia", [(1, 3), (2, 2), (4,), (1, 1, 2)])
    def test_count(self, inertia: tuple[int, ...]) -> None:
        assert len(local_module_basis(split(*inertia), 2)) == sum(inertia)

    def test_ramified(self) -> None:
        with pytest.raises(HypothesisError):
            local_module_basis(SplittingType(((2, 1),)), 3)


def test_valuation() -> None:
    assert valuation(0, 3) is None
    assert valuation(-12, 2) == 2
    assert valuation(7, 3) == 0


class TestPatternContains:
    def test_identity(self) -> None:
        V = pattern_from_class(HomothetyClass((2, 0, 1)))
        assert pattern_contains(V, ImmutableMatrix(eye(3)), 5)

    def test_companion_violates_bound(self) -> None:
        V = pattern_from_class(HomothetyClass((1, 0, 0)))
        M = zeros(3, 3)
        M[0:2, 0:2] = companion_matrix((1, 0, 1))
        assert not pattern_contains(V, ImmutableMatrix(M), 3)

    def test_multiple_of_p(self) -> None:
        V = pattern_from_class(HomothetyClass((1, 0, 0)))
        M = ImmutableMatrix([[3, 6, 9], [12, 0, 3], [3, 3, 3]])
        assert pattern_contains(V, M, 3)

    def test_shape_mismatch(self) -> None:
        V = pattern_from_class(HomothetyClass((1, 0)))
        with pytest.raises(DomainError):
            pattern_contains(V, ImmutableMatrix(eye(3)), 3)


@pytest.mark.parametrize(
    "coords,inertia,p,expected",
    [
        ((0, 0, 0, 0), (1, 3), 2, True),
        ((1, 0, 0, 0), (4,), 3, False),
        ((1, 1, 0, 0), (2, 2), 5, True),
        ((1, 2, 0, 0), (1, 1, 2), 3, True),
        ((0, 1, 0, 0), (1, 1, 2), 3, True),
        ((0, 0, 1, 0), (1, 1, 2), 3, False),
    ],
)
def test_oracle_contains(
    coords: tuple[int, ...], inertia: tuple[int, ...], p: int, expected: bool
) -> None:
    assert oracle_contains(HomothetyClass(coords), split(*inertia), p) is expected


class TestIntersectPatterns:
    def test_idempotent(self) -> None:
        V = pattern_from_class(HomothetyClass((2, 1, 0)))
        assert intersect_patterns([V, V]).bounds == V.bounds

    def test_tends_to_block_sum(self) -> None:
        bound = 3
        patterns = [
            pattern_from_class(HomothetyClass((level, level, 0)))
            for level in range(-bound, bound + 1)
        ]
        assert intersect_patterns(patterns).bounds == (
            (0, 0, bound),
            (0, 0, bound),
            (bound, bound, 0),
        )

    def test_errors(self) -> None:
        with pytest.raises(DomainError):
            intersect_patterns([])
        with pytest.raises(DomainError):
            intersect_patterns(
                [
                    pattern_from_class(HomothetyClass((0, 0))),
                    pattern_from_class(HomothetyClass((0, 0, 0))),
                ]
            )


class TestSpanCoordinates:
    def test_products_stay_in_span(self) -> None:
        basis = local_module_basis(split(2), 3)
        C = basis[1]
        assert span_coordinates(basis, C * C) == (-1, 0)

    def test_outside_span(self) -> None:
        basis = local_module_basis(split(2), 3)
        assert span_coordinates(basis, ImmutableMatrix([[0, 1], [0, 0]])) is None

    def test_non_integral(self) -> None:
        basis = local_module_basis(split(2), 3)
        half = ImmutableMatrix([[1, 1], [-1, 1]]) * Rational(1, 2)
        assert span_coordinates(basis, half) is None

    def test_dependent_basis(self) -> None:
        identity = ImmutableMatrix(eye(2))
        with pytest.raises(DomainError):
            span_coordinates([identity, identity], identity)
