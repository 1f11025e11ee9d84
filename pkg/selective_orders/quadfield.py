"""
Arithmetic of an imaginary quadratic field K = Q(sqrt(m)).

Ideal classes are modelled by reduced positive definite binary quadratic
forms of the fundamental discriminant d. Primes of K carry the class of
the form (p, b, c) attached to them, which is also their Artin symbol in
the Hilbert class field. The tower defining L over K is reduced into
residue fields to read off splitting types.

"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Sequence

from sympy import (
    Poly,
    discriminant,
    factorint,
    gcdex,
    isprime,
    primefactors,
    primerange,
    symbols,
)

from .building import SplittingType
from .exceptions import BadPrimeError, DomainError, RamifiedInLError
from .ffarith import (
    DEFAULT_SEED,
    FFPolynomial,
    FiniteField,
    FiniteFieldElement,
    factor_ff,
    kronecker_symbol,
    sqrt_ff,
)
from .groups import FiniteAbelianGroup

logger = logging.getLogger(__name__)

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"


@dataclass(frozen=True)
class QuadField:
    """The field Q(sqrt(m)) for a negative squarefree m."""

    m: int

    def __post_init__(self) -> None:
        if self.m >= 0:
            raise DomainError(f"K must be imaginary quadratic, got m = {self.m}")
        if self.m != -1 and any(e > 1 for e in factorint(-self.m).values()):
            raise DomainError(f"m must be squarefree, got {self.m}")

    @property
    def discriminant(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m

    def __str__(self) -> str:
        return f"Q(sqrt({self.m}))"


@dataclass(frozen=True, order=True)
class BinQuadForm:
    """The form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 or (abs(b) != a and a != c)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def is_fundamental(d: int) -> bool:
    if d % 4 == 1:
        return all(e == 1 for e in factorint(abs(d)).values())
    if d % 4 != 0:
        return False
    m = d // 4
    if m % 4 not in (2, 3):
        return False
    return all(e == 1 for e in factorint(abs(m)).values())


def principal_form(d: int) -> BinQuadForm:
    k = d % 2
    return BinQuadForm(1, k, (k * k - d) // 4)


def _normalize(a: int, b: int, c: int) -> tuple[int, int, int]:
    r = (a - b) // (2 * a)
    return a, b + 2 * r * a, a * r * r + b * r + c


def reduce_form(form: BinQuadForm, discriminant: int | None = None) -> BinQuadForm:
    """Return the unique reduced form properly equivalent to form."""
    if form.a <= 0:
        raise DomainError(f"{form} is not positive definite")
    if discriminant is not None and form.discriminant != discriminant:
        raise DomainError(
            f"{form} has discriminant {form.discriminant}, expected {discriminant}"
        )
    if form.discriminant >= 0:
        raise DomainError(f"{form} is not definite")
    a, b, c = _normalize(form.a, form.b, form.c)
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    return BinQuadForm(a, b, c)


def _solve_linmod(a: int, b: int, m: int) -> tuple[int, int]:
    # a*x = b (mod m) has solutions x = u + v*k
    d, _, g = (int(x) for x in gcdex(a, m))
    q, r = divmod(b, g)
    if r:
        raise DomainError(f"{a}*x = {b} has no solution modulo {m}")
    return int(q * d % m), int(m // g)


def compose(f1: BinQuadForm, f2: BinQuadForm) -> BinQuadForm:
    """Gauss composition of two forms followed by reduction."""
    d = f1.discriminant
    if f2.discriminant != d:
        raise DomainError(f"Cannot compose {f1} and {f2}: discriminants differ")
    a, b, c = f1.a, f1.b, f1.c
    alpha, beta = f2.a, f2.b
    g = (b + beta) // 2
    h = -(b - beta) // 2
    w = gcd(gcd(a, alpha), g)
    s, t, u = a // w, alpha // w, g // w
    mu, nu = _solve_linmod(t * u, h * u + s * c, s * t)
    lam, _ = _solve_linmod(t * nu, h - t * mu, s)
    k = mu + nu * lam
    ell = (k * t - h) // s
    m = (t * u * k - h * u - c * s) // (s * t)
    result = BinQuadForm(s * t, w * u - (k * t + ell * s), k * ell - w * m)
    return reduce_form(result, d)


def inverse_form(form: BinQuadForm) -> BinQuadForm:
    return reduce_form(BinQuadForm(form.a, -form.b, form.c))


def reduced_forms(d: int) -> list[BinQuadForm]:
    """Enumerate every reduced form of a negative discriminant."""
    forms = []
    for a in range(1, isqrt(-d // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            numerator = b * b - d
            if numerator % (4 * a):
                continue
            c = numerator // (4 * a)
            form = BinQuadForm(a, b, c)
            if c >= a and form.is_reduced():
                forms.append(form)
    return forms


@dataclass
class ClassGroup:
    """The form class group of a fundamental discriminant."""

    discriminant: int
    forms: list[BinQuadForm]
    identity: BinQuadForm
    group: FiniteAbelianGroup[BinQuadForm]
    generators: list[tuple[BinQuadForm, int]]

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def exponent(self) -> int:
        return self.group.exponent()

    @property
    def orders(self) -> dict[BinQuadForm, int]:
        return {f: self.group.order(f) for f in self.forms}

    def compose(self, f1: BinQuadForm, f2: BinQuadForm) -> BinQuadForm:
        return self.group.multiply(f1, f2)

    def power(self, form: BinQuadForm, k: int) -> BinQuadForm:
        return self.group.power(form, k)

    def reduce(self, form: BinQuadForm) -> BinQuadForm:
        return reduce_form(form, self.discriminant)

    def __str__(self) -> str:
        invariants = " x ".join(f"Z/{o}" for _, o in self.generators) or "trivial"
        return f"C({self.discriminant}) = {invariants}"


def class_group(K: QuadField) -> ClassGroup:
    d = K.discriminant
    if not is_fundamental(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    forms = reduced_forms(d)
    identity = principal_form(d)
    group = FiniteAbelianGroup(forms, compose, identity)
    # prefer generators with non-negative middle coefficient
    generators = group.cyclic_decomposition(preference=lambda f: (f.a, -f.b)) or []
    logger.debug(
        "Class group of %s: h=%i, invariants=%s",
        K,
        len(forms),
        [o for _, o in generators],
    )
    return ClassGroup(
        discriminant=d,
        forms=group.elements,
        identity=identity,
        group=group,
        generators=generators,
    )


@dataclass(frozen=True)
class PrimeOfK:
    """
    A prime of K above the rational prime p.

    Split primes carry label 1 or 2: label 1 is the prime defined by the
    canonical square root r of d mod p, label 2 by its negative.

    """

    p: int
    kind: str
    form: BinQuadForm
    label: int | None = None
    # canonical square root of d modulo p attached to the prime (split only)
    sqrt_d: int | None = field(default=None, compare=False)

    @property
    def name(self) -> str:
        return f"P_{self.p}" if self.label is None else f"P_{self.p},{self.label}"

    def __str__(self) -> str:
        return self.name

    @property
    def is_split(self) -> bool:
        return self.kind == SPLIT

    @property
    def norm(self) -> int:
        return self.p * self.p if self.kind == INERT else self.p

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind == INERT else 1

    def sort_key(self) -> tuple[int, int]:
        return (self.p, self.label or 0)


def splitting_kind(K: QuadField, p: int) -> str:
    symbol = kronecker_symbol(K.discriminant, p)
    return {1: SPLIT, -1: INERT, 0: RAMIFIED}[symbol]


def prime_of_K(K: QuadField, p: int) -> list[PrimeOfK]:
    """Return the primes of K above p with their ideal classes."""
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    d = K.discriminant
    kind = splitting_kind(K, p)
    if kind == INERT:
        return [PrimeOfK(p, INERT, principal_form(d))]
    if kind == RAMIFIED:
        if p == 2:
            b = 0 if d % 8 == 0 else 2
        else:
            b = 0 if d % 2 == 0 else p
        return [PrimeOfK(p, RAMIFIED, _form_of(p, b, d))]
    if p == 2:
        # d = 1 mod 8; both conjugates have b odd
        return [
            PrimeOfK(2, SPLIT, _form_of(2, 1, d), 1, 1),
            PrimeOfK(2, SPLIT, _form_of(2, -1, d), 2, 1),
        ]
    r = int(sqrt_ff(FiniteField(p)(d)))  # type: ignore[arg-type]
    primes = []
    for label, root in ((1, r), (2, p - r)):
        b = root if (root - d) % 2 == 0 else root + p
        primes.append(PrimeOfK(p, SPLIT, _form_of(p, b, d), label, root))
    return primes


def _form_of(p: int, b: int, d: int) -> BinQuadForm:
    return reduce_form(BinQuadForm(p, b, (b * b - d) // (4 * p)), d)


def primes_of_K_up_to(K: QuadField, bound: int) -> list[PrimeOfK]:
    return [P for p in primerange(2, bound + 1) for P in prime_of_K(K, p)]


@dataclass(frozen=True)
class TowerSpec:
    """
    The defining data of L over K.

    level1 is a monic polynomial over K given lowest degree first as
    pairs (u, v) meaning u + v*sqrt(m); level2 is an optional monic
    polynomial with rational integer coefficients adjoined on top.

    """

    level1: tuple[tuple[int, int], ...]
    level2: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.level1) < 2 or tuple(self.level1[-1]) != (1, 0):
            raise DomainError("level1 must be monic of degree at least 1")
        if self.level2 is not None and (len(self.level2) < 2 or self.level2[-1] != 1):
            raise DomainError("level2 must be monic of degree at least 1")

    @classmethod
    def from_lists(
        cls, level1: Sequence[Sequence[int]], level2: Sequence[int] | None = None
    ) -> TowerSpec:
        return cls(
            tuple((int(u), int(v)) for u, v in level1),
            None if level2 is None else tuple(int(c) for c in level2),
        )

    @property
    def degrees(self) -> tuple[int, int]:
        level2 = 1 if self.level2 is None else len(self.level2) - 1
        return len(self.level1) - 1, level2

    @property
    def degree(self) -> int:
        d1, d2 = self.degrees
        return d1 * d2

    def level1_discriminant_norm(self, K: QuadField) -> int:
        """Norm down to Q of the discriminant of the level-1 polynomial."""
        x, s = symbols("x s")
        f = sum((u + v * s) * x**i for i, (u, v) in enumerate(self.level1))
        disc = Poly(discriminant(f, x), s).rem(Poly(s**2 - K.m, s))
        coeffs = dict(zip((k[0] for k in disc.monoms()), disc.coeffs()))
        a, b = int(coeffs.get(0, 0)), int(coeffs.get(1, 0))
        return a * a - K.m * b * b

    def level2_discriminant(self) -> int:
        if self.level2 is None or len(self.level2) < 3:
            return 1
        x = symbols("x")
        return int(discriminant(sum(c * x**i for i, c in enumerate(self.level2)), x))

    def bad_primes(self, K: QuadField) -> frozenset[int]:
        """Primes excluded from every Frobenius scan."""
        return _bad_primes(self, K)


@functools.lru_cache(maxsize=None)
def _bad_primes(tower: TowerSpec, K: QuadField) -> frozenset[int]:
    bad = set(primefactors(2 * K.discriminant))
    norm = tower.level1_discriminant_norm(K) if len(tower.level1) > 2 else 1
    if norm == 0:
        raise DomainError("level1 polynomial is not separable")
    bad.update(primefactors(norm))
    disc2 = tower.level2_discriminant()
    if disc2 == 0:
        raise DomainError("level2 polynomial is not separable")
    bad.update(primefactors(disc2))
    return frozenset(bad)


def residue_field(K: QuadField, P: PrimeOfK) -> FiniteField:
    return FiniteField(P.p, P.residue_degree)


def sqrt_m_image(K: QuadField, P: PrimeOfK) -> FiniteFieldElement:
    """Image of sqrt(m) in the residue field of P."""
    F = residue_field(K, P)
    if P.kind == SPLIT:
        if P.sqrt_d is None:
            raise DomainError(f"{P} carries no square root of d")
        if K.discriminant == K.m:
            return F(P.sqrt_d)
        return F(P.sqrt_d) / 2
    if P.kind == INERT:
        root = sqrt_ff(F(K.m))
        if root is None:
            raise DomainError(f"m has no square root modulo {P}")
        return root
    raise BadPrimeError(f"{P} is ramified in K")


def splitting_in_L(
    K: QuadField, tower: TowerSpec, P: PrimeOfK, seed: int = DEFAULT_SEED
) -> SplittingType:
    """
    Splitting type over K of the primes of L above P.

    The level-1 polynomial is reduced into the residue field of P and
    factored; above each factor of degree k the level-2 polynomial is
    factored over the residue field of degree k times that of P.

    """
    if P.kind == RAMIFIED:
        raise BadPrimeError(f"{P} is ramified in K")
    if P.p in tower.bad_primes(K):
        raise BadPrimeError(f"{P} lies above a bad prime of the tower")
    F = residue_field(K, P)
    root = sqrt_m_image(K, P)
    level1 = FFPolynomial(F, [root * v + u for u, v in tower.level1])
    pieces: list[tuple[int, int]] = []
    for factor, multiplicity in factor_ff(level1, seed=seed):
        if multiplicity > 1:
            raise RamifiedInLError(f"{P} is ramified in L (level 1)")
        if tower.level2 is None:
            pieces.append((1, factor.degree))
            continue
        E = FiniteField(P.p, F.degree * factor.degree)
        level2 = FFPolynomial.from_ints(E, tower.level2)
        for factor2, multiplicity2 in factor_ff(level2, seed=seed):
            if multiplicity2 > 1:
                raise RamifiedInLError(f"{P} is ramified in L (level 2)")
            pieces.append((1, factor.degree * factor2.degree))
    splitting = SplittingType(tuple(sorted(pieces, key=lambda ef: ef[1])))
    logger.debug("Splitting of %s in L: %s", P, splitting)
    return splitting
