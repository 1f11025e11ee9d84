"""
Property suites run by the `verify` command.

Each suite walks its whole search space and stops at the first
counterexample, which is returned as text rather than raised so that the
command can report every suite's count.

"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Sequence

from .building import (
    HomothetyClass,
    SplittingType,
    admissible_types,
    chamber_vertices,
    compositions,
    contains_ring_of_integers,
    enumerate_containing_vertices,
    vertex_type,
)
from .config import Config
from .exceptions import InconclusiveScanError
from .orders import local_module_basis, oracle_contains, span_coordinates
from .quadfield import QuadField, class_group, compose, inverse_form, principal_form
from .selectivity import (
    admits_embedding,
    distance_idele,
    genus_group,
    hilbert_scan,
    image_in_genus_group,
    parametrize_genus,
    scan_subgroups,
)
from .settings import SCAN_BOUND, SCAN_WINDOW, SEED, VERIFY_N_MAX, VERIFY_PRIMES

logger = logging.getLogger(__name__)

CLASS_GROUP_DISCRIMINANTS = {-4: 1, -23: 3, -56: 4, -84: 4, -104: 6}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }

    def __str__(self) -> str:
        outcome = "ok" if self.passed else f"FAILED: {self.counterexample}"
        return f"{self.name}: {self.checked} checked, {outcome}"


def _classes(n: int, bound: int) -> Iterable[HomothetyClass]:
    for coords in itertools.product(range(bound), repeat=n):
        if min(coords) == 0:
            yield HomothetyClass(coords)


@functools.lru_cache(maxsize=None)
def _splittings(n: int) -> tuple[SplittingType, ...]:
    return tuple(SplittingType.unramified(f) for f in compositions(n))


def oracle_equivalence(
    n_max: int = VERIFY_N_MAX,
    primes: Sequence[int] = VERIFY_PRIMES,
    mutate: bool = False,
) -> SuiteResult:
    """
    Block constancy against brute-force containment.

    With `mutate` set the block-constancy answer is negated on the first
    non-trivial class, which must be reported as a counterexample.

    """
    result = SuiteResult("oracle_equivalence")
    for n in range(1, n_max + 1):
        for s in _splittings(n):
            for v in _classes(n, 3):
                expected = contains_ring_of_integers(v, s)
                if mutate and any(v.coords):
                    expected = not expected
                    mutate = False
                for p in primes:
                    result.checked += 1
                    if oracle_contains(v, s, p) != expected:
                        result.counterexample = (
                            f"vertex {v}, splitting {s}, p={p}: oracle says "
                            f"{not expected}, block constancy says {expected}"
                        )
                        return result
    return result


def admissible_types_identity(n_max: int = VERIFY_N_MAX + 1) -> SuiteResult:
    result = SuiteResult("admissible_types_identity")
    for n in range(1, n_max + 1):
        for s in _splittings(n):
            result.checked += 1
            enumerated = {
                vertex_type(v) for v in enumerate_containing_vertices(s, n + 1)
            }
            d = functools.reduce(gcd, s.inertia)
            generated = {k * d % n for k in range(n)}
            types = set(admissible_types(s))
            if not (types == enumerated == generated):
                result.counterexample = (
                    f"splitting {s}: admissible {sorted(types)}, "
                    f"enumerated {sorted(enumerated)}, generated {sorted(generated)}"
                )
                return result
            chamber = chamber_vertices(s)
            if len(chamber) != s.g or len({vertex_type(v) for v in chamber}) != s.g:
                result.counterexample = f"splitting {s}: chamber {chamber}"
                return result
    return result


def inert_uniqueness(
    degrees: Sequence[int] = (3, 4, 5), max_bound: int = 6
) -> SuiteResult:
    result = SuiteResult("inert_uniqueness")
    for n in degrees:
        s = SplittingType.unramified([n])
        for bound in range(1, max_bound + 1):
            result.checked += 1
            found = enumerate_containing_vertices(s, bound)
            if found != [HomothetyClass((0,) * n)]:
                result.counterexample = f"n={n}, bound={bound}: {found}"
                return result
    return result


def class_group_laws(
    discriminants: dict[int, int] = CLASS_GROUP_DISCRIMINANTS,
) -> SuiteResult:
    """Group axioms for composition, checked on every pair and triple."""
    result = SuiteResult("class_group_laws")
    for d, h in discriminants.items():
        m = d if d % 4 == 1 else d // 4
        forms = class_group(QuadField(m)).forms
        identity = principal_form(d)
        if len(forms) != h:
            result.counterexample = f"h({d}) = {len(forms)}, expected {h}"
            return result
        for f in forms:
            result.checked += 1
            if compose(f, identity) != f or compose(f, inverse_form(f)) != identity:
                result.counterexample = f"identity or inverse fails for {f}, d={d}"
                return result
            for g in forms:
                if compose(f, g) != compose(g, f):
                    result.counterexample = f"{f} and {g} do not commute, d={d}"
                    return result
                for k in forms:
                    result.checked += 1
                    if compose(compose(f, g), k) != compose(f, compose(g, k)):
                        result.counterexample = f"associativity fails on {f}, {g}, {k}"
                        return result
    return result


def multiplicative_closure(
    n_max: int = 4, primes: Sequence[int] = VERIFY_PRIMES
) -> SuiteResult:
    """Products of local basis elements stay in their integer span."""
    result = SuiteResult("multiplicative_closure")
    for n in range(1, min(n_max, 4) + 1):
        for s in _splittings(n):
            for p in primes:
                basis = local_module_basis(s, p)
                for x, y in itertools.product(basis, repeat=2):
                    result.checked += 1
                    if span_coordinates(basis, x * y) is None:
                        result.counterexample = f"splitting {s}, p={p}: {x * y} escapes"
                        return result
    return result


def selectivity_consistency(
    config: Config,
    bound: int | None = None,
    window: int | None = None,
    seed: int | None = None,
) -> SuiteResult:
    """
    Global laws on one configuration.

    Distance ideles multiply along triples and vanish on the diagonal,
    verdicts depend only on the a-tuple, the admitting count times
    [L0:K] is |G_R|, a division prime forces [L0:K] = 1, and H is the
    image of the subgroup found against the full class group.

    """
    result = SuiteResult("selectivity_consistency")
    bound = bound or config.scan_bound or SCAN_BOUND
    window = window or config.scan_window or SCAN_WINDOW
    seed = next(v for v in (seed, config.seed, SEED) if v is not None)
    K = QuadField(config.m)
    C = class_group(K)
    B = config.algebra(K)
    overrides = config.splitting_overrides(K)
    G = genus_group(B, C)
    try:
        S = scan_subgroups(K, config.tower, B, G, bound, window, overrides, seed)
        S_full = hilbert_scan(K, config.tower, B, C, bound, window, overrides, seed)
    except InconclusiveScanError as ex:
        result.counterexample = f"inconclusive scan: {ex}"
        return result
    representatives = parametrize_genus(G, S)

    def check(condition: bool, message: Callable[[], str]) -> bool:
        result.checked += 1
        if not condition:
            result.counterexample = message()
        return condition

    for D in representatives:
        if not check(
            not distance_idele(D, D, G) and distance_idele(D, D, G).image == G.identity,
            lambda: f"delta({D}, {D}) is not trivial",
        ):
            return result
        if not check(
            admits_embedding(D, S) == (not any(D.a)),
            lambda: f"verdict for {D} does not follow its a-tuple",
        ):
            return result
    for D1, D2, D3 in itertools.product(representatives, repeat=3):
        left = distance_idele(D1, D3, G).image
        right = G.multiply(
            distance_idele(D1, D2, G).image, distance_idele(D2, D3, G).image
        )
        if not check(
            left == right, lambda: f"delta not multiplicative on {D1}, {D2}, {D3}"
        ):
            return result
    admitting = sum(admits_embedding(D, S) for D in representatives)
    if not check(
        admitting * S.L0_index == len(G),
        lambda: (
            f"{admitting} admitting times [L0:K]={S.L0_index} "
            f"is not |G_R|={len(G)}"
        ),
    ):
        return result
    if B.has_division_prime and not check(
        S.L0_index == 1, lambda: f"division prime present but [L0:K]={S.L0_index}"
    ):
        return result
    image = image_in_genus_group(S_full, G)
    check(
        image == S.H,
        lambda: f"H={sorted(S.H)} but the class group scan projects to {sorted(image)}",
    )
    if B.is_unramified and len(G) == C.h and result.passed:
        # G_R is the whole class group, so L_0 is the intersection with it
        check(
            S.L0_index == S_full.L0_index,
            lambda: f"[L0:K]={S.L0_index} but the Hilbert index is {S_full.L0_index}",
        )
    return result


def run_suites(
    config: Config | None,
    n_max: int = VERIFY_N_MAX,
    mutate: bool = False,
    *,
    bound: int | None = None,
    window: int | None = None,
    seed: int | None = None,
) -> list[SuiteResult]:
    results = []
    suites: list[Callable[[], SuiteResult]] = [
        lambda: oracle_equivalence(n_max, mutate=mutate),
        lambda: admissible_types_identity(n_max + 1),
        lambda: inert_uniqueness(tuple(n for n in (3, 4, 5) if n <= max(n_max, 3))),
        class_group_laws,
        lambda: multiplicative_closure(min(n_max, 4)),
    ]
    if config is not None:
        suites.append(lambda: selectivity_consistency(config, bound, window, seed))
    for suite in suites:
        result = suite()
        logger.info("%s", result)
        results.append(result)
    return results
