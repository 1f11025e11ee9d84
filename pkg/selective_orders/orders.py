"""
Brute-force model of maximal orders at an unramified prime.

The maximal order of a vertex [a_1, ..., a_n] is the set of matrices whose
(i, j) entry has p-adic valuation at least a_i - a_j. The local ring of
integers of L is realised inside M_n by companion matrices of unramified
generators, one block per prime of L, and containment is checked entry by
entry on exact integer matrices. This gives an independent check of the
block-constancy criterion in `building`.

"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Sequence

from sympy import ImmutableMatrix, Matrix, multiplicity, zeros

from .building import HomothetyClass, SplittingType
from .exceptions import DomainError
from .ffarith import FFPolynomial, FiniteField, least_irreducible

logger = logging.getLogger(__name__)

IntMatrix = ImmutableMatrix


@dataclass(frozen=True)
class OrderPattern:
    """Lower bounds on the valuations of the entries of an order."""

    bounds: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.bounds)
        if n == 0 or any(len(row) != n for row in self.bounds):
            raise DomainError("An order pattern must be a non-empty square matrix")

    @property
    def n(self) -> int:
        return len(self.bounds)

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.bounds[i][j]

    def as_matrix(self) -> IntMatrix:
        return IntMatrix(self.bounds)


@dataclass(frozen=True)
class ValuationPattern(OrderPattern):
    """The pattern a_i - a_j of the maximal order of a homothety class."""

    def __post_init__(self) -> None:
        super().__post_init__()
        n = self.n
        for i in range(n):
            if self.bounds[i][i] != 0:
                raise DomainError(f"Diagonal bound at {i} must be 0")
            for j in range(n):
                for k in range(n):
                    if self.bounds[i][j] + self.bounds[j][k] != self.bounds[i][k]:
                        raise DomainError(
                            f"Bounds are not a difference pattern at ({i},{j},{k})"
                        )

    def vertex(self) -> HomothetyClass:
        return HomothetyClass(tuple(self.bounds[i][-1] for i in range(self.n)))


def pattern_from_class(v: HomothetyClass) -> ValuationPattern:
    a = v.coords
    return ValuationPattern(tuple(tuple(ai - aj for aj in a) for ai in a))


def companion_matrix(coeffs: Sequence[int]) -> IntMatrix:
    """Companion matrix of a monic polynomial given lowest degree first."""
    f = len(coeffs) - 1
    rows = [[1 if j == i + 1 else 0 for j in range(f)] for i in range(f - 1)]
    rows.append([-c for c in coeffs[:-1]])
    return IntMatrix(rows)


def unramified_generator(p: int, f: int) -> tuple[IntMatrix, FFPolynomial]:
    """
    A generator of the unramified extension of degree f as a matrix.

    Returns the companion matrix of the lift of the least monic
    irreducible of degree f over F_p, and that polynomial mod p.

    """
    if f < 1:
        raise DomainError(f"Inertia degree must be positive, got {f}")
    coeffs = least_irreducible(p, f)
    return companion_matrix(coeffs), FFPolynomial.from_ints(FiniteField(p), coeffs)


def local_module_basis(s: SplittingType, p: int) -> list[IntMatrix]:
    """
    An integral basis of the product of the local rings of integers of L.

    Block i contributes the powers C_i^0, ..., C_i^(f_i - 1) of the
    unramified generator of degree f_i, placed on the diagonal block i.

    """
    s.require_unramified()
    return list(_local_module_basis(s, p))


@functools.lru_cache(maxsize=None)
def _local_module_basis(s: SplittingType, p: int) -> tuple[IntMatrix, ...]:
    n = s.n
    basis = []
    for start, stop in s.blocks():
        generator, _ = unramified_generator(p, stop - start)
        power = Matrix.eye(stop - start)
        for _ in range(stop - start):
            element = zeros(n, n)
            element[start:stop, start:stop] = power
            basis.append(IntMatrix(element))
            power = power * generator
    return tuple(basis)


def valuation(value: int, p: int) -> int | None:
    """The p-adic valuation, or None for zero."""
    if value == 0:
        return None
    return int(multiplicity(p, abs(int(value))))


def pattern_contains(V: OrderPattern, M: IntMatrix, p: int) -> bool:
    if M.shape != (V.n, V.n):
        raise DomainError(f"Shape {M.shape} does not match a pattern of size {V.n}")
    for i, row in enumerate(M.tolist()):
        for j, entry in enumerate(row):
            v = valuation(entry, p)
            if v is not None and v < V[i, j]:
                return False
    return True


def oracle_contains(v: HomothetyClass, s: SplittingType, p: int) -> bool:
    """Whether every local basis element lies in the order of v."""
    s.require_unramified()
    if v.n != s.n:
        raise DomainError(f"Dimension mismatch: vertex {v} against splitting {s}")
    pattern = pattern_from_class(v)
    return all(pattern_contains(pattern, M, p) for M in local_module_basis(s, p))


def intersect_patterns(patterns: Sequence[OrderPattern]) -> OrderPattern:
    """Entrywise maximum: the intersection of the orders as modules."""
    if not patterns:
        raise DomainError("Cannot intersect an empty list of patterns")
    n = patterns[0].n
    if any(P.n != n for P in patterns):
        raise DomainError("Cannot intersect patterns of different sizes")
    return OrderPattern(
        tuple(
            tuple(max(P.bounds[i][j] for P in patterns) for j in range(n))
            for i in range(n)
        )
    )


def span_coordinates(
    basis: Sequence[IntMatrix], M: IntMatrix
) -> tuple[int, ...] | None:
    """Integer coordinates of M in the span of basis, or None."""
    columns = Matrix.hstack(*(Matrix(B).reshape(len(B), 1) for B in basis))
    target = Matrix(M).reshape(len(M), 1)
    try:
        solution, params = columns.gauss_jordan_solve(target)
    except ValueError:
        return None
    if params.shape[0]:
        raise DomainError("Basis matrices are linearly dependent")
    if any(not x.is_integer for x in solution):
        return None
    return tuple(int(x) for x in solution)
