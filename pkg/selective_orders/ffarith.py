"""
Exact arithmetic over F_p and its extensions F_{p^k}.

Extension fields are always built over the lexicographically least monic
irreducible polynomial of the required degree, so residue-field
coordinates are reproducible. Polynomial factorization is square-free
decomposition, then distinct-degree, then Cantor-Zassenhaus equal-degree
splitting driven by a seeded generator.

All values are immutable; every function is pure given its seed.

"""

from __future__ import annotations

import functools
import itertools
import logging
import random
from typing import Iterable, Iterator, Sequence, Union

from sympy import isprime, jacobi_symbol, primefactors, sqrt_mod

from .exceptions import DomainError, UnsupportedError

logger = logging.getLogger(__name__)

# seed used by factor_ff when the caller does not supply one
DEFAULT_SEED = 1009

Coercible = Union["FiniteFieldElement", int]


def kronecker_symbol(a: int, n: int) -> int:
    """
    Return the Kronecker symbol (a|n) for positive n.

    The odd part of n is handled by the Jacobi symbol; each factor 2 of n
    contributes (a|2), which is 0 for even a and -1 for a = 3, 5 mod 8.

    """
    if n <= 0:
        raise DomainError(f"Kronecker symbol needs a positive modulus, got {n}")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


class FiniteField:
    """
    The field F_{p^k}, k >= 1, as F_p[x] / (modulus).

    For k = 1 the modulus is the polynomial x and elements are plain
    residues. Fields compare equal when p, k and the modulus agree.

    """

    __slots__ = ("p", "degree", "modulus", "order")

    def __init__(
        self, p: int, degree: int = 1, modulus: Sequence[int] | None = None
    ) -> None:
        if not isprime(p):
            raise DomainError(f"Characteristic must be prime, got {p}")
        if degree < 1:
            raise DomainError(f"Extension degree must be positive, got {degree}")
        self.p = p
        self.degree = degree
        self.order = p**degree
        if modulus is None:
            self.modulus = least_irreducible(p, degree)
        else:
            self.modulus = _check_modulus(p, degree, modulus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.degree, self.modulus) == (
            other.p,
            other.degree,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.degree, self.modulus))

    def __repr__(self) -> str:
        return f"<FiniteField p={self.p} degree={self.degree}>"

    def __str__(self) -> str:
        return f"F_{self.p}" if self.degree == 1 else f"F_{self.p}^{self.degree}"

    def __call__(self, value: Coercible | Sequence[int]) -> FiniteFieldElement:
        if isinstance(value, FiniteFieldElement):
            if value.field != self:
                raise DomainError(f"{value!r} does not belong to {self}")
            return value
        if isinstance(value, int):
            return FiniteFieldElement(self, (value,) + (0,) * (self.degree - 1))
        return FiniteFieldElement(self, tuple(value))

    @property
    def zero(self) -> FiniteFieldElement:
        return self(0)

    @property
    def one(self) -> FiniteFieldElement:
        return self(1)

    @property
    def generator(self) -> FiniteFieldElement:
        """Return the class of x (a primitive element only by accident)."""
        if self.degree == 1:
            raise DomainError("F_p has no polynomial generator")
        return self((0, 1) + (0,) * (self.degree - 2))

    def elements(self) -> Iterator[FiniteFieldElement]:
        """Iterate over all elements in canonical coordinate order."""
        for coords in itertools.product(range(self.p), repeat=self.degree):
            yield FiniteFieldElement(self, coords[::-1])

    def random_element(self, rng: random.Random) -> FiniteFieldElement:
        return FiniteFieldElement(
            self, tuple(rng.randrange(self.p) for _ in range(self.degree))
        )


class FiniteFieldElement:
    """
    An element of F_{p^k} stored as coordinates in the power basis.

    Coordinates are kept reduced into [0, p).

    """

    __slots__ = ("field", "coords")

    def __init__(self, field: FiniteField, coords: Sequence[int]) -> None:
        if len(coords) != field.degree:
            raise DomainError(
                f"{field} elements need {field.degree} coordinates, got {len(coords)}"
            )
        self.field = field
        self.coords = tuple(c % field.p for c in coords)

    def __repr__(self) -> str:
        return f"<FiniteFieldElement {self} in {self.field}>"

    def __str__(self) -> str:
        if self.field.degree == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == self.field(other)
        if not isinstance(other, FiniteFieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.degree, self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __int__(self) -> int:
        if self.field.degree != 1 and any(self.coords[1:]):
            raise DomainError(f"{self} does not lie in the prime field")
        return self.coords[0]

    def _coerce(self, other: Coercible) -> FiniteFieldElement:
        return self.field(other)

    def __add__(self, other: Coercible) -> FiniteFieldElement:
        other = self._coerce(other)
        return FiniteFieldElement(
            self.field, [a + b for a, b in zip(self.coords, other.coords)]
        )

    __radd__ = __add__

    def __neg__(self) -> FiniteFieldElement:
        return FiniteFieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other: Coercible) -> FiniteFieldElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coercible) -> FiniteFieldElement:
        return self._coerce(other) - self

    def __mul__(self, other: Coercible) -> FiniteFieldElement:
        other = self._coerce(other)
        field = self.field
        p = field.p
        if field.degree == 1:
            return FiniteFieldElement(field, (self.coords[0] * other.coords[0] % p,))
        k = field.degree
        product = [0] * (2 * k - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    product[i + j] += a * b
        # reduce by the monic modulus: x^k = -(m_0 + ... + m_{k-1} x^{k-1})
        modulus = field.modulus
        for top in range(2 * k - 2, k - 1, -1):
            c = product[top] % p
            if c:
                for j in range(k):
                    product[top - k + j] -= c * modulus[j]
        return FiniteFieldElement(field, product[:k])

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> FiniteFieldElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> FiniteFieldElement:
        if not self:
            raise ZeroDivisionError("Zero has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, other: Coercible) -> FiniteFieldElement:
        return self * self._coerce(other).inverse()

    def is_square(self) -> bool:
        if not self or self.field.p == 2:
            return True
        return self ** ((self.field.order - 1) // 2) == 1

    def pth_root(self) -> FiniteFieldElement:
        """Return the unique p-th root (Frobenius is bijective)."""
        return self ** (self.field.order // self.field.p)


def sqrt_ff(a: FiniteFieldElement) -> FiniteFieldElement | None:
    """
    Return a square root of a, or None when a is a non-square.

    Of the two roots r, -r the one with the lexicographically smaller
    coordinate tuple is returned.

    """
    field = a.field
    if field.p == 2:
        raise UnsupportedError("Square roots in characteristic 2 are not supported")
    if not a:
        return a
    if field.degree == 1:
        roots = sqrt_mod(int(a), field.p, all_roots=True)
        if not roots:
            return None
        return field(min(int(r) for r in roots))
    if not a.is_square():
        return None
    root = _tonelli_shanks(a)
    return min(root, -root, key=lambda r: r.coords)


def _tonelli_shanks(a: FiniteFieldElement) -> FiniteFieldElement:
    field = a.field
    s, t = 0, field.order - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = _least_nonresidue(field)
    m, c, x, b = s, z**t, a ** ((t + 1) // 2), a**t
    while b != 1:
        i, b2 = 0, b
        while b2 != 1:
            b2, i = b2 * b2, i + 1
        step = c ** (2 ** (m - i - 1))
        x, c = x * step, step * step
        b, m = b * c, i
    return x


@functools.lru_cache(maxsize=None)
def _least_nonresidue(field: FiniteField) -> FiniteFieldElement:
    for candidate in field.elements():
        if candidate and not candidate.is_square():
            return candidate
    raise DomainError(f"{field} has no non-residues")


class FFPolynomial:
    """
    A dense univariate polynomial over a FiniteField.

    Coefficients are stored lowest degree first with trailing zeros
    stripped; the zero polynomial has no coefficients and degree -1.

    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[Coercible]) -> None:
        values = [field(c) for c in coeffs]
        while values and not values[-1]:
            values.pop()
        self.field = field
        self.coeffs: tuple[FiniteFieldElement, ...] = tuple(values)

    @classmethod
    def from_ints(cls, field: FiniteField, coeffs: Iterable[int]) -> FFPolynomial:
        return cls(field, coeffs)

    @classmethod
    def monomial(cls, field: FiniteField, degree: int) -> FFPolynomial:
        return cls(field, [0] * degree + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> FiniteFieldElement:
        if not self.coeffs:
            raise DomainError("The zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FFPolynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"<FFPolynomial {self} over {self.field}>"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            monomial = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not monomial:
                terms.append(str(c))
            elif c == 1:
                terms.append(monomial)
            else:
                terms.append(f"{c}*{monomial}")
        return " + ".join(terms)

    def key(self) -> tuple:
        """Canonical sort key: degree, then coefficients from the top down."""
        return (self.degree, tuple(c.coords for c in reversed(self.coeffs)))

    def __call__(self, x: Coercible) -> FiniteFieldElement:
        result = self.field.zero
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __add__(self, other: FFPolynomial) -> FFPolynomial:
        zero = self.field.zero
        return FFPolynomial(
            self.field,
            [
                a + b
                for a, b in itertools.zip_longest(
                    self.coeffs, other.coeffs, fillvalue=zero
                )
            ],
        )

    def __neg__(self) -> FFPolynomial:
        return FFPolynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: FFPolynomial) -> FFPolynomial:
        return self + (-other)

    def __mul__(self, other: FFPolynomial | Coercible) -> FFPolynomial:
        if not isinstance(other, FFPolynomial):
            scalar = self.field(other)
            return FFPolynomial(self.field, [c * scalar for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return FFPolynomial(self.field, [])
        product = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product[i + j] = product[i + j] + a * b
        return FFPolynomial(self.field, product)

    def __divmod__(self, other: FFPolynomial) -> tuple[FFPolynomial, FFPolynomial]:
        if not other.coeffs:
            raise ZeroDivisionError("Polynomial division by zero")
        remainder = list(self.coeffs)
        shift = len(remainder) - len(other.coeffs)
        if shift < 0:
            return FFPolynomial(self.field, []), self
        lead_inverse = other.leading.inverse()
        quotient = [self.field.zero] * (shift + 1)
        for i in range(shift, -1, -1):
            c = remainder[i + other.degree] * lead_inverse
            quotient[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    remainder[i + j] = remainder[i + j] - c * b
        return (
            FFPolynomial(self.field, quotient),
            FFPolynomial(self.field, remainder[: other.degree]),
        )

    def __floordiv__(self, other: FFPolynomial) -> FFPolynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: FFPolynomial) -> FFPolynomial:
        return divmod(self, other)[1]

    def monic(self) -> FFPolynomial:
        if not self.coeffs:
            return self
        return self * self.leading.inverse()

    def derivative(self) -> FFPolynomial:
        return FFPolynomial(
            self.field, [c * i for i, c in enumerate(self.coeffs)][1:]
        )

    def pow_mod(self, exponent: int, modulus: FFPolynomial) -> FFPolynomial:
        result = FFPolynomial(self.field, [1]) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            exponent >>= 1
        return result


def poly_gcd(f: FFPolynomial, g: FFPolynomial) -> FFPolynomial:
    """Return the monic gcd (zero only when both inputs are zero)."""
    while g:
        f, g = g, f % g
    return f.monic()


@functools.lru_cache(maxsize=None)
def least_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """
    Return the lexicographically least monic irreducible of a degree over F_p.

    Candidates are ordered by their coefficients read from the top down;
    the result is the coefficient tuple lowest degree first.

    """
    prime_field = FiniteField(p) if degree > 1 else None
    if prime_field is None:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=degree):
        coeffs = tail[::-1] + (1,)
        if is_irreducible_ff(FFPolynomial.from_ints(prime_field, coeffs)):
            logger.debug(
                "Least irreducible of degree %i over F_%i: %s", degree, p, coeffs
            )
            return coeffs
    raise DomainError(f"No irreducible polynomial of degree {degree} over F_{p}")


def _check_modulus(p: int, degree: int, modulus: Sequence[int]) -> tuple[int, ...]:
    coeffs = tuple(c % p for c in modulus)
    if len(coeffs) != degree + 1 or coeffs[-1] != 1:
        raise DomainError(f"Modulus must be monic of degree {degree}")
    if degree > 1 and not is_irreducible_ff(
        FFPolynomial.from_ints(FiniteField(p), coeffs)
    ):
        raise DomainError(f"Modulus {coeffs} is reducible over F_{p}")
    return coeffs


def is_irreducible_ff(f: FFPolynomial) -> bool:
    """Rabin's irreducibility test."""
    if f.is_zero() or f.degree < 1:
        raise DomainError("Irreducibility is only defined for non-constant polynomials")
    f = f.monic()
    n, q = f.degree, f.field.order
    x = FFPolynomial.monomial(f.field, 1)
    for r in primefactors(n):
        h = _frobenius_power(x, q, n // r, f)
        if not poly_gcd(f, h - x).is_one():
            return False
    return (_frobenius_power(x, q, n, f) - x) % f == FFPolynomial(f.field, [])


def _frobenius_power(
    g: FFPolynomial, q: int, times: int, modulus: FFPolynomial
) -> FFPolynomial:
    for _ in range(times):
        g = g.pow_mod(q, modulus)
    return g


def factor_ff(
    f: FFPolynomial, seed: int = DEFAULT_SEED
) -> list[tuple[FFPolynomial, int]]:
    """
    Factor f into monic irreducibles with multiplicities.

    The result is sorted canonically (by degree, then coefficients read
    from the top down); constants factor as the empty product.

    """
    if f.is_zero():
        raise DomainError("Cannot factor the zero polynomial")
    rng = random.Random(seed)
    factors: list[tuple[FFPolynomial, int]] = []
    for square_free, multiplicity in _square_free_decomposition(f.monic()):
        for product, degree in _distinct_degree(square_free):
            for factor in _equal_degree(product, degree, rng):
                factors.append((factor, multiplicity))
    return sorted(factors, key=lambda fm: fm[0].key())


def _square_free_decomposition(f: FFPolynomial) -> list[tuple[FFPolynomial, int]]:
    result = []
    c = poly_gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        factor = w // y
        if not factor.is_one():
            result.append((factor, i))
        w, c, i = y, c // y, i + 1
    if not c.is_one():
        p = f.field.p
        root = FFPolynomial(f.field, [a.pth_root() for a in c.coeffs[::p]])
        result.extend((g, m * p) for g, m in _square_free_decomposition(root))
    return result


def _distinct_degree(f: FFPolynomial) -> list[tuple[FFPolynomial, int]]:
    result = []
    q = f.field.order
    x = FFPolynomial.monomial(f.field, 1)
    h = x % f
    i = 1
    while f.degree >= 2 * i:
        h = h.pow_mod(q, f)
        g = poly_gcd(f, h - x)
        if not g.is_one():
            result.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.degree > 0:
        result.append((f, f.degree))
    return result


def _equal_degree(
    f: FFPolynomial, degree: int, rng: random.Random
) -> list[FFPolynomial]:
    if f.degree == degree:
        return [f]
    field = f.field
    while True:
        a = FFPolynomial(
            field, [field.random_element(rng) for _ in range(f.degree)]
        )
        if a.degree < 1:
            continue
        if field.p == 2:
            # absolute trace from F_{2^(k*degree)} down to F_2
            g, term = a % f, a % f
            for _ in range(field.degree * degree - 1):
                term = (term * term) % f
                g = g + term
        else:
            g = a.pow_mod((field.order**degree - 1) // 2, f) - FFPolynomial(
                field, [1]
            )
        d = poly_gcd(f, g)
        if 0 < d.degree < f.degree:
            return _equal_degree(d, degree, rng) + _equal_degree(f // d, degree, rng)
