"""
Which maximal orders of a central simple algebra B over K contain O_L.

Isomorphism classes of maximal orders in the genus of R are a torsor under
G_R = C_K / (C_K^n, [nu]^kappa_nu for nu ramified in B). Scanning the
Frobenius of primes of K against their splitting in L recovers the
subgroups H (primes with a degree-one factor in L) and H_hat (primes that
split completely), from which one representative order is built for every
element of G_R. O_L embeds into a representative exactly when its
distance from R lands in H, so the selectivity ratio is 1 / [G_R : H].

"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Mapping

from sympy import primefactors, primerange

from .building import (
    HomothetyClass,
    SplittingType,
    admissible_types,
    chamber_vertices,
    contains_ring_of_integers,
    enumerate_containing_vertices,
    type_distance,
)
from .exceptions import (
    BadPrimeError,
    ConfigurationError,
    DomainError,
    InconclusiveScanError,
    InternalConsistencyError,
    MissingSplittingDataError,
    RamifiedInLError,
)
from .ffarith import DEFAULT_SEED
from .groups import QuotientGroup
from .quadfield import (
    RAMIFIED,
    BinQuadForm,
    ClassGroup,
    PrimeOfK,
    QuadField,
    TowerSpec,
    class_group,
    prime_of_K,
    splitting_in_L,
)
from .report import Report
from .settings import SCAN_BOUND, SCAN_WINDOW, SEED

if TYPE_CHECKING:
    from .config import Config

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_ABHN_FAIL = "abhn_fail"
STATUS_INCONCLUSIVE = "inconclusive"

SHORTCUT_FLAG = "no selectivity: division prime present"

PARTIAL_RAMIFICATION_NOTE = (
    "At partially ramified primes the reduced norm of the local normalizer "
    "is modelled as units, n-th powers and nu^kappa; the class [nu]^kappa "
    "is killed in G_R."
)


@dataclass(frozen=True)
class Ramification:
    """A prime of K ramified in B with its local index m and capacity n/m."""

    prime: PrimeOfK
    local_index: int
    capacity: int

    @property
    def is_total(self) -> bool:
        return self.capacity == 1


@dataclass(frozen=True)
class AlgebraData:
    """A central simple algebra of degree n over K, by its local indices."""

    degree: int
    ramification: tuple[Ramification, ...] = ()

    @classmethod
    def build(
        cls, degree: int, local_indices: Iterable[tuple[PrimeOfK, int]]
    ) -> AlgebraData:
        if degree < 3:
            raise DomainError(f"Degree must be at least 3, got {degree}")
        entries = []
        for prime, m in local_indices:
            if m <= 1 or degree % m:
                raise DomainError(
                    f"Local index {m} at {prime} must be a divisor of {degree} above 1"
                )
            entries.append(Ramification(prime, m, degree // m))
        primes = [entry.prime for entry in entries]
        if len(set(primes)) != len(primes):
            raise DomainError("Ramified primes must be pairwise distinct")
        return cls(degree, tuple(sorted(entries, key=lambda e: e.prime.sort_key())))

    @property
    def dimension(self) -> int:
        return self.degree * self.degree

    @property
    def ramified_primes(self) -> frozenset[PrimeOfK]:
        return frozenset(entry.prime for entry in self.ramification)

    @property
    def is_unramified(self) -> bool:
        return not self.ramification

    @property
    def has_division_prime(self) -> bool:
        return any(entry.is_total for entry in self.ramification)

    @property
    def is_partially_ramified(self) -> bool:
        return any(not entry.is_total for entry in self.ramification)

    def local_index(self, P: PrimeOfK) -> int:
        for entry in self.ramification:
            if entry.prime == P:
                return entry.local_index
        return 1

    def unramified(self) -> AlgebraData:
        """The matrix algebra M_n(K) of the same degree."""
        return AlgebraData(self.degree)


@dataclass(frozen=True)
class AbhnEntry:
    prime: PrimeOfK
    local_index: int
    splitting: SplittingType
    ok: bool


@dataclass(frozen=True)
class AbhnReport:
    entries: tuple[AbhnEntry, ...]

    @property
    def ok(self) -> bool:
        return all(entry.ok for entry in self.entries)

    def __bool__(self) -> bool:
        return self.ok


def check_abhn(
    B: AlgebraData, splitting: Mapping[PrimeOfK, SplittingType]
) -> AbhnReport:
    """
    Whether L embeds in B: m_nu divides e*f for every prime of L above nu.

    Splitting data is required for every prime ramified in B.

    """
    entries = []
    for entry in B.ramification:
        if entry.prime not in splitting:
            raise MissingSplittingDataError(
                f"No splitting data for {entry.prime}, which is ramified in B"
            )
        s = splitting[entry.prime]
        ok = all((e * f) % entry.local_index == 0 for e, f in s.factors)
        if not ok:
            logger.info(
                "ABHN fails at %s: m=%i, splitting %s",
                entry.prime,
                entry.local_index,
                s,
            )
        entries.append(AbhnEntry(entry.prime, entry.local_index, s, ok))
    return AbhnReport(tuple(entries))


@dataclass
class GenusGroup:
    """
    The group G_R, as a quotient of the class group.

    Elements are reduced forms naming their coset; `ramified` holds the
    primes of B whose Artin symbol is not defined here.

    """

    class_group: ClassGroup
    group: QuotientGroup[BinQuadForm]
    ramified: frozenset[PrimeOfK] = frozenset()

    def __len__(self) -> int:
        return len(self.group)

    @property
    def order(self) -> int:
        return len(self.group)

    @property
    def exponent(self) -> int:
        return self.group.exponent()

    @property
    def elements(self) -> list[BinQuadForm]:
        return self.group.elements

    @property
    def identity(self) -> BinQuadForm:
        return self.group.identity

    @property
    def generators(self) -> list[tuple[BinQuadForm, int]]:
        return self.group.cyclic_decomposition(preference=lambda f: (f.a, -f.b)) or []

    def project(self, form: BinQuadForm) -> BinQuadForm:
        return self.group.project(self.class_group.reduce(form))

    def multiply(self, x: BinQuadForm, y: BinQuadForm) -> BinQuadForm:
        return self.group.multiply(x, y)

    def power(self, x: BinQuadForm, k: int) -> BinQuadForm:
        return self.group.power(x, k)


def genus_group(B: AlgebraData, C: ClassGroup) -> GenusGroup:
    """Quotient of C_K by n-th powers and the classes [nu]^kappa_nu."""
    kernel = [C.power(form, B.degree) for form in C.forms]
    for entry in B.ramification:
        kernel.append(C.power(entry.prime.form, entry.capacity))
        if not entry.is_total:
            logger.warning(
                "Partially ramified prime %s (m=%i): killing [nu]^%i in G_R",
                entry.prime,
                entry.local_index,
                entry.capacity,
            )
    group = C.group.quotient(kernel)
    logger.info("G_R has order %i, exponent %i", len(group), group.exponent())
    return GenusGroup(C, group, B.ramified_primes)


def class_field_group(C: ClassGroup) -> GenusGroup:
    """The full class group, i.e. the Galois group of the Hilbert class field."""
    return GenusGroup(C, C.group.quotient([]))


def frobenius(P: PrimeOfK, G: GenusGroup) -> BinQuadForm:
    """The Artin symbol of P in G_R."""
    if P in G.ramified:
        raise DomainError(f"{P} is ramified in B")
    return G.project(P.form)


@dataclass(frozen=True)
class Witness:
    prime: PrimeOfK
    frobenius: BinQuadForm
    splitting: SplittingType


@dataclass
class SubgroupData:
    """The result of a Frobenius scan."""

    G: GenusGroup
    H: frozenset[BinQuadForm]
    H_hat: frozenset[BinQuadForm]
    bound: int
    window: int
    degree: int
    last_prime: int = 0
    primes_scanned: int = 0
    stabilized: bool = False
    # least prime per element of G_R, of any kind, with a degree-one
    # factor in L, and splitting completely in L respectively
    witnesses: dict[BinQuadForm, Witness] = field(default_factory=dict)
    degree_one: dict[BinQuadForm, Witness] = field(default_factory=dict)
    split: dict[BinQuadForm, Witness] = field(default_factory=dict)

    @property
    def L0_index(self) -> int:
        return len(self.G) // len(self.H)

    @property
    def is_complete(self) -> bool:
        return (
            set(self.G.elements) <= set(self.witnesses)
            and self.H <= set(self.degree_one)
            and self.H_hat <= set(self.split)
        )

    def is_saturated(self, quiet: Mapping[BinQuadForm, int]) -> bool:
        """
        Whether the scan may stop.

        `quiet` counts, per element of G_R, the primes tested since H or
        H_hat last grew. Elements outside H_hat can still join H or H_hat,
        so each needs `window` of them.

        """
        return self.is_complete and all(
            quiet.get(x, 0) >= self.window
            for x in self.G.elements
            if x not in self.H_hat
        )

    def record(self, witness: Witness) -> None:
        element, s = witness.frobenius, witness.splitting
        if element not in self.witnesses:
            logger.debug("Witness %s for %s", witness.prime, element)
            self.witnesses[element] = witness
        if s.has_degree_one_factor and element not in self.degree_one:
            logger.debug("Degree-one witness %s for %s", witness.prime, element)
            self.degree_one[element] = witness
            self.H = self.G.group.subgroup(self.degree_one)
        if s.splits_completely and element not in self.split:
            logger.debug("Split witness %s for %s", witness.prime, element)
            self.split[element] = witness
            self.H_hat = self.G.group.subgroup(self.split)


def _local_splitting(
    K: QuadField,
    tower: TowerSpec | None,
    P: PrimeOfK,
    overrides: Mapping[PrimeOfK, SplittingType],
    seed: int,
) -> SplittingType | None:
    if P in overrides:
        return overrides[P]
    if tower is None:
        return None
    try:
        return splitting_in_L(K, tower, P, seed=seed)
    except (BadPrimeError, RamifiedInLError) as ex:
        logger.debug("Skipping %s: %s", P, ex)
        return None


def scan_subgroups(
    K: QuadField,
    tower: TowerSpec | None,
    B: AlgebraData,
    G: GenusGroup,
    bound: int = SCAN_BOUND,
    window: int = SCAN_WINDOW,
    overrides: Mapping[PrimeOfK, SplittingType] | None = None,
    seed: int = DEFAULT_SEED,
) -> SubgroupData:
    """
    Determine H and H_hat from the Frobenius of primes up to bound.

    Primes of K are visited in increasing order (conjugates by label),
    skipping bad primes, primes ramified in B, and primes ramified in L.
    The scan stops once every element of G_R, H and H_hat has a witness
    and every element outside H_hat has had `window` primes tested since
    H or H_hat last grew. Exhausting the bound first leaves `stabilized`
    unset.

    """
    if bound < 10:
        raise DomainError(f"Scan bound must be at least 10, got {bound}")
    overrides = overrides or {}
    bad = tower.bad_primes(K) if tower is not None else frozenset()
    identity = frozenset([G.identity])
    data = SubgroupData(G, identity, identity, bound, window, B.degree)
    quiet: Counter[BinQuadForm] = Counter()
    for p in primerange(2, bound + 1):
        for P in prime_of_K(K, p):
            if P in B.ramified_primes or P.kind == RAMIFIED and P not in overrides:
                continue
            if p in bad and P not in overrides:
                continue
            s = _local_splitting(K, tower, P, overrides, seed)
            if s is None or not s.is_unramified:
                continue
            before = (data.H, data.H_hat)
            element = frobenius(P, G)
            data.record(Witness(P, element, s))
            data.primes_scanned += 1
            data.last_prime = p
            if (data.H, data.H_hat) != before:
                quiet.clear()
            else:
                quiet[element] += 1
        if data.is_saturated(quiet):
            data.stabilized = True
            break
    logger.info(
        "Scan up to %i: %i primes, |H|=%i, |H_hat|=%i, stabilized=%s",
        data.last_prime,
        data.primes_scanned,
        len(data.H),
        len(data.H_hat),
        data.stabilized,
    )
    if not data.is_complete:
        raise InconclusiveScanError(
            f"Scan bound {bound} exhausted before every needed coset had a witness",
            partial=data,
        )
    return data


@dataclass(frozen=True)
class Generator:
    """A parametrizing prime and its Frobenius."""

    prime: PrimeOfK
    element: BinQuadForm
    order: int
    splitting: SplittingType


@dataclass(frozen=True)
class GenusBasis:
    """Primes lambda_i (rho), mu_j (sigma) and nu_k (tau)."""

    degree: int
    rho: tuple[Generator, ...]
    sigma: tuple[Generator, ...]
    tau: tuple[Generator, ...]

    @property
    def primes(self) -> tuple[PrimeOfK, ...]:
        return tuple(g.prime for g in self.rho + self.sigma + self.tau)


@dataclass(frozen=True)
class GenusElement:
    """The representative D^{a,b,c} and its local vertices."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    vertices: tuple[tuple[PrimeOfK, HomothetyClass], ...]

    @property
    def exponents(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (self.a, self.b, self.c)

    @property
    def primes(self) -> tuple[PrimeOfK, ...]:
        return tuple(P for P, _ in self.vertices)

    def vertex_at(self, P: PrimeOfK) -> HomothetyClass:
        for Q, v in self.vertices:
            if Q == P:
                return v
        raise DomainError(f"{P} is not a parametrizing prime")

    @property
    def witness_primes(self) -> tuple[PrimeOfK, ...]:
        """Parametrizing primes where this representative differs from R."""
        return tuple(P for P, v in self.vertices if any(v.coords))

    def origin(self) -> GenusElement:
        """The representative D^{0,0,0}, i.e. R itself."""
        return GenusElement(
            tuple(0 for _ in self.a),
            tuple(0 for _ in self.b),
            tuple(0 for _ in self.c),
            tuple((P, HomothetyClass((0,) * v.n)) for P, v in self.vertices),
        )

    def __str__(self) -> str:
        return f"D^({list(self.a)},{list(self.b)},{list(self.c)})"


def _least_witness(
    pool: Mapping[BinQuadForm, Witness], match: BinQuadForm, project: QuotientGroup
) -> Witness:
    found = [w for x, w in pool.items() if project.project(x) == match]
    if not found:
        raise InternalConsistencyError(f"No witness prime for the coset of {match}")
    return min(found, key=lambda w: w.prime.sort_key())


def genus_basis(G: GenusGroup, S: SubgroupData) -> GenusBasis:
    """
    Choose the parametrizing primes from the scan witnesses.

    G/H, H/H_hat and H_hat are decomposed with generators drawn from
    witnessed elements; each generator is realised by its least witness.

    """
    group = G.group
    G_mod_H = group.quotient(S.H)
    H_group = group.restrict(S.H)
    H_mod_H_hat = H_group.quotient(S.H_hat)
    H_hat_group = group.restrict(S.H_hat)

    def realise(
        quotient: QuotientGroup, pool: Mapping[BinQuadForm, Witness], label: str
    ) -> tuple[Generator, ...]:
        candidates = {quotient.project(x) for x in pool if x in quotient.parent}
        decomposition = quotient.cyclic_decomposition(candidates)
        if decomposition is None:
            raise InconclusiveScanError(
                f"Witnesses do not generate the {label} quotient", partial=S
            )
        generators = []
        for element, order in decomposition:
            witness = _least_witness(
                {x: w for x, w in pool.items() if x in quotient.parent},
                element,
                quotient,
            )
            generators.append(
                Generator(witness.prime, witness.frobenius, order, witness.splitting)
            )
        return tuple(generators)

    rho = realise(G_mod_H, S.witnesses, "G/H")
    sigma = realise(H_mod_H_hat, S.degree_one, "H/H_hat")
    tau = realise(H_hat_group.quotient([]), S.split, "H_hat")
    basis = GenusBasis(S.degree, rho, sigma, tau)
    if len(set(basis.primes)) != len(basis.primes):
        logger.error("Parametrizing primes repeat: %s", basis.primes)
        raise InternalConsistencyError("A prime was chosen for two generators")
    return basis


def parametrize_genus(G: GenusGroup, S: SubgroupData) -> list[GenusElement]:
    """
    One representative D^{a,b,c} per element of G_R.

    At lambda_i the local vertex is [1^a_i, 0, ...], at mu_j it is
    [b_j, 0, ...] with the degree-one prime of L first, and at nu_k it is
    [1^c_k, 0, ...].

    """
    basis = genus_basis(G, S)
    n = basis.degree
    ranges = [range(g.order) for g in basis.rho + basis.sigma + basis.tau]
    r, s = len(basis.rho), len(basis.sigma)
    representatives = []
    images = set()
    for exponents in itertools.product(*ranges):
        a, b, c = exponents[:r], exponents[r : r + s], exponents[r + s :]
        vertices = []
        for g, ai in zip(basis.rho, a):
            vertices.append((g.prime, HomothetyClass((1,) * ai + (0,) * (n - ai))))
        for g, bj in zip(basis.sigma, b):
            vertex = HomothetyClass((bj,) + (0,) * (n - 1))
            if not contains_ring_of_integers(vertex, g.splitting.degree_one_first()):
                logger.error("Vertex %s at %s misses O_L", vertex, g.prime)
                raise InternalConsistencyError(
                    f"{vertex} at {g.prime} does not contain O_L"
                )
            vertices.append((g.prime, vertex))
        for g, ck in zip(basis.tau, c):
            vertex = HomothetyClass((1,) * ck + (0,) * (n - ck))
            if not contains_ring_of_integers(vertex, g.splitting):
                logger.error("Vertex %s at %s misses O_L", vertex, g.prime)
                raise InternalConsistencyError(
                    f"{vertex} at {g.prime} does not contain O_L"
                )
            vertices.append((g.prime, vertex))
        element = GenusElement(tuple(a), tuple(b), tuple(c), tuple(vertices))
        representatives.append(element)
        images.add(distance_idele(element.origin(), element, G).image)
    if len(images) != len(G) or len(representatives) != len(G):
        logger.error("Parametrization covers %i of %i classes", len(images), len(G))
        raise InternalConsistencyError("Witness primes do not parametrize G_R")
    return representatives


@dataclass(frozen=True)
class DistanceIdele:
    """Type distances at the primes where two representatives differ."""

    support: tuple[tuple[PrimeOfK, int], ...]
    image: BinQuadForm

    def __bool__(self) -> bool:
        return bool(self.support)


def distance_idele(D1: GenusElement, D2: GenusElement, G: GenusGroup) -> DistanceIdele:
    """
    The G_R-valued distance between two representatives.

    The image is the product of Frob(P)^td_P over the support; type
    distances at primes ramified in B are zero by definition.

    """
    if D1.primes != D2.primes or tuple(map(len, D1.exponents)) != tuple(
        map(len, D2.exponents)
    ):
        raise DomainError(f"{D1} and {D2} come from different parametrizations")
    support = []
    image = G.identity
    for P in D1.primes:
        v1, v2 = D1.vertex_at(P), D2.vertex_at(P)
        if v1 == v2 or P in G.ramified:
            continue
        td = type_distance(v1, v2)
        support.append((P, td))
        image = G.multiply(image, G.power(frobenius(P, G), td))
    return DistanceIdele(tuple(support), image)


def admits_embedding(E: GenusElement, S: SubgroupData) -> bool:
    """Whether O_L embeds in E: its distance from R is trivial on L_0."""
    return distance_idele(E.origin(), E, S.G).image in S.H


@dataclass(frozen=True)
class LocalCertificate:
    """The local embedding data of O_L at one prime."""

    prime: PrimeOfK
    splitting: SplittingType
    admissible_types: tuple[int, ...]
    chamber_vertices: tuple[HomothetyClass, ...]
    containing_vertices: tuple[HomothetyClass, ...]


def local_certificate(P: PrimeOfK, s: SplittingType) -> LocalCertificate:
    return LocalCertificate(
        prime=P,
        splitting=s,
        admissible_types=tuple(sorted(admissible_types(s))),
        chamber_vertices=tuple(chamber_vertices(s)),
        containing_vertices=tuple(enumerate_containing_vertices(s)),
    )


def hilbert_scan(
    K: QuadField,
    tower: TowerSpec | None,
    B: AlgebraData,
    C: ClassGroup,
    bound: int = SCAN_BOUND,
    window: int = SCAN_WINDOW,
    overrides: Mapping[PrimeOfK, SplittingType] | None = None,
    seed: int = DEFAULT_SEED,
) -> SubgroupData:
    """Frobenius scan against the full class group."""
    return scan_subgroups(
        K, tower, B, class_field_group(C), bound, window, overrides, seed
    )


def chevalley_index(
    K: QuadField,
    tower: TowerSpec | None,
    B: AlgebraData,
    C: ClassGroup,
    bound: int = SCAN_BOUND,
    window: int = SCAN_WINDOW,
    overrides: Mapping[PrimeOfK, SplittingType] | None = None,
    seed: int = DEFAULT_SEED,
) -> int:
    """The degree over K of the intersection of L with the Hilbert class field."""
    return hilbert_scan(K, tower, B, C, bound, window, overrides, seed).L0_index


def image_in_genus_group(S_full: SubgroupData, G: GenusGroup) -> frozenset[BinQuadForm]:
    """Project a subgroup of the class group into G_R."""
    return G.group.subgroup(G.project(x) for x in S_full.H)


def _ramified_splitting(
    K: QuadField,
    tower: TowerSpec | None,
    P: PrimeOfK,
    overrides: Mapping[PrimeOfK, SplittingType],
    seed: int,
) -> SplittingType:
    if P in overrides:
        return overrides[P]
    if tower is None:
        raise MissingSplittingDataError(f"No tower or splitting override for {P}")
    try:
        return splitting_in_L(K, tower, P, seed=seed)
    except (BadPrimeError, RamifiedInLError) as ex:
        raise MissingSplittingDataError(
            f"Splitting at {P} is not computable from the tower ({ex}); "
            "supply a splitting_override"
        ) from ex


def _form(form: BinQuadForm) -> list[int]:
    return list(form.as_tuple())


def _splitting(s: SplittingType) -> list[list[int]]:
    return [[e, f] for e, f in s.factors]


def class_group_tree(C: ClassGroup) -> dict:
    orders = C.orders
    return {
        "discriminant": C.discriminant,
        "h": C.h,
        "exponent": C.exponent,
        "invariants": [order for _, order in C.generators],
        "generators": [_form(g) for g, _ in C.generators],
        "orders": [{"form": _form(f), "order": orders[f]} for f in C.forms],
    }


def _genus_tree(G: GenusGroup) -> dict:
    return {
        "order": G.order,
        "exponent": G.exponent,
        "invariants": [order for _, order in G.generators],
        "elements": [_form(x) for x in G.elements],
    }


def _ramified_in_K_tree(K: QuadField, G: GenusGroup) -> list[dict]:
    # primes above the divisors of d are never scanned
    entries = []
    for p in primefactors(abs(K.discriminant)):
        for P in prime_of_K(K, p):
            element = G.project(P.form)
            entries.append(
                {
                    "prime": P.name,
                    "class": _form(G.class_group.reduce(P.form)),
                    "element": _form(element),
                    "order": G.group.order(element),
                }
            )
    return entries


def _scan_tree(S: SubgroupData) -> dict:
    return {
        "bound": S.bound,
        "window": S.window,
        "last_prime": S.last_prime,
        "primes_scanned": S.primes_scanned,
        "stabilized": S.stabilized,
        "H_order": len(S.H),
        "H_hat_order": len(S.H_hat),
        "H": [_form(x) for x in sorted(S.H)],
        "H_hat": [_form(x) for x in sorted(S.H_hat)],
    }


def _certificate_tree(role: str, g: Generator) -> dict:
    splitting = g.splitting.degree_one_first() if role == "sigma" else g.splitting
    certificate = local_certificate(g.prime, splitting)
    return {
        "prime": certificate.prime.name,
        "role": role,
        "splitting": _splitting(certificate.splitting),
        "admissible_types": list(certificate.admissible_types),
        "chamber_vertices": [list(v.coords) for v in certificate.chamber_vertices],
        "containing_vertices": [
            list(v.coords) for v in certificate.containing_vertices
        ],
    }


def selectivity_report(
    config: Config,
    *,
    bound: int | None = None,
    window: int | None = None,
    seed: int | None = None,
) -> Report:
    """
    Run the whole analysis for a configuration.

    Command-line values override the config file, which overrides the
    app settings. ABHN failure and an inconclusive scan are reported
    through the status rather than raised.

    """
    bound = next(v for v in (bound, config.scan_bound, SCAN_BOUND) if v is not None)
    window = next(v for v in (window, config.scan_window, SCAN_WINDOW) if v is not None)
    seed = next(v for v in (seed, config.seed, SEED) if v is not None)
    K = QuadField(config.m)
    logger.info("Analysing %s with n=%i", K, config.degree)
    C = class_group(K)
    B = config.algebra(K)
    overrides = config.splitting_overrides(K)
    tower = config.tower
    notes = []
    if B.is_partially_ramified:
        notes.append(PARTIAL_RAMIFICATION_NOTE)
    tree: dict = {
        "status": STATUS_OK,
        "base_field": {"m": K.m, "discriminant": K.discriminant},
        "degree": B.degree,
        "dimension": B.dimension,
        "seed": seed,
        "class_group": class_group_tree(C),
        "ramification": [
            {
                "prime": entry.prime.name,
                "local_index": entry.local_index,
                "capacity": entry.capacity,
                "class": _form(entry.prime.form),
                "frobenius_order": C.group.order(entry.prime.form),
                "modeling": "total" if entry.is_total else "partial",
            }
            for entry in B.ramification
        ],
        "notes": notes,
    }
    splitting = {
        entry.prime: _ramified_splitting(K, tower, entry.prime, overrides, seed)
        for entry in B.ramification
    }
    abhn = check_abhn(B, splitting)
    tree["abhn"] = [
        {
            "prime": entry.prime.name,
            "local_index": entry.local_index,
            "splitting": _splitting(entry.splitting),
            "ok": entry.ok,
        }
        for entry in abhn.entries
    ]
    if not abhn:
        tree["status"] = STATUS_ABHN_FAIL
        tree["message"] = "L does not embed in B"
        return Report(tree)

    G = genus_group(B, C)
    tree["genus_group"] = _genus_tree(G)
    tree["ramified_in_K"] = _ramified_in_K_tree(K, G)
    shortcut = B.has_division_prime
    tree["shortcut"] = SHORTCUT_FLAG if shortcut else None
    if shortcut:
        tree["L0_index"] = 1
        tree["ratio"] = Fraction(1)
    try:
        S = scan_subgroups(K, tower, B, G, bound, window, overrides, seed)
    except InconclusiveScanError as ex:
        logger.warning("Inconclusive scan: %s", ex)
        if ex.partial is not None:
            tree["scan"] = _scan_tree(ex.partial)
        if shortcut:
            tree["shortcut_check"] = f"scan inconclusive: {ex}"
        else:
            tree["status"] = STATUS_INCONCLUSIVE
            tree["message"] = str(ex)
        return Report(tree)
    tree["scan"] = _scan_tree(S)
    if shortcut:
        if S.L0_index != 1:
            raise ConfigurationError(
                f"B has a division prime but the scan finds [L0:K] = {S.L0_index}; "
                "the splitting data contradicts the tower"
            )
        tree["shortcut_check"] = "scan agrees"

    basis = genus_basis(G, S)
    representatives = parametrize_genus(G, S)
    verdicts = [admits_embedding(E, S) for E in representatives]
    ratio = Fraction(sum(verdicts), len(G))
    if ratio != Fraction(1, S.L0_index):
        logger.error("Ratio %s disagrees with [L0:K] = %i", ratio, S.L0_index)
        raise InternalConsistencyError("Selectivity ratio is not 1/[L0:K]")
    tree["L0_index"] = S.L0_index
    tree["ratio"] = ratio
    tree["generators"] = {
        role: [
            {
                "prime": g.prime.name,
                "class": _form(g.element),
                "order": g.order,
                "splitting": _splitting(g.splitting),
            }
            for g in generators
        ]
        for role, generators in (
            ("rho", basis.rho),
            ("sigma", basis.sigma),
            ("tau", basis.tau),
        )
    }
    tree["representatives"] = [
        {
            "tuple": [list(E.a), list(E.b), list(E.c)],
            "admits": admits,
            "witness_primes": [P.name for P in E.witness_primes],
            "vertices": [
                {"prime": P.name, "vertex": list(v.coords)} for P, v in E.vertices
            ],
        }
        for E, admits in zip(representatives, verdicts)
    ]
    tree["local_certificates"] = [
        _certificate_tree(role, g)
        for role, generators in (
            ("rho", basis.rho),
            ("sigma", basis.sigma),
            ("tau", basis.tau),
        )
        for g in generators
    ]
    if B.is_unramified:
        tree["hilbert_index"] = chevalley_index(
            K, tower, B, C, bound, window, overrides, seed
        )
    logger.info("Selectivity ratio %s over %i classes", ratio, len(G))
    return Report(tree)
