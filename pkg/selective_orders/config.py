"""
Loading and validating selectivity configuration files.

A config file is a JSON document:

    {
      "base_field": {"m": -14},
      "algebra": {
        "degree": 4,
        "ramification": [{"rational_prime": 137, "which": "all", "local_index": 2}]
      },
      "extension": {
        "tower": {"level1": [[33, 44], [22, 4], [1, 0]], "level2": [5, 0, 1]},
        "splitting_override": [
          {"rational_prime": 3, "which": 1, "factors": [[1, 2], [1, 2]]}
        ]
      },
      "scan": {"bound": 5000, "window": 50},
      "seed": 1009
    }

`which` picks primes of K above the rational prime: 1 or 2 for one of a
split pair, "all" for every prime above it, "ramified" or "inert" for the
single prime of that kind. Schema problems raise ValidationError with a
message per field; nothing is computed before the whole file is valid.

"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

from django.core.exceptions import ValidationError
from sympy import isprime

from .building import SplittingType
from .exceptions import DomainError
from .quadfield import (
    INERT,
    RAMIFIED,
    SPLIT,
    PrimeOfK,
    QuadField,
    TowerSpec,
    prime_of_K,
)
from .selectivity import AlgebraData

logger = logging.getLogger(__name__)

Which = Union[int, str]

WHICH_CHOICES = (1, 2, "all", "ramified", "inert")

# bundled config reproducing the worked example over Q(sqrt(-14))
EXAMPLE_CONFIG = Path(__file__).parent / "configs" / "example_paper.config"


def _integer(value: Any, name: str) -> int:
    # large integers may be written as decimal strings
    if isinstance(value, bool):
        raise ValidationError({name: f"Expected an integer, got {value!r}."})
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.lstrip("-").isdigit():
        return int(value)
    raise ValidationError({name: f"Expected an integer, got {value!r}."})


def _section(data: dict, key: str, required: bool = True) -> dict:
    value = data.get(key)
    if value is None:
        if required:
            raise ValidationError({key: "This section is required."})
        return {}
    if not isinstance(value, dict):
        raise ValidationError({key: "Expected an object."})
    return value


@dataclass(frozen=True)
class PrimeSelector:
    """The primes of K picked out by a rational prime and a `which`."""

    rational_prime: int
    which: Which

    def resolve(self, K: QuadField, name: str) -> list[PrimeOfK]:
        primes = prime_of_K(K, self.rational_prime)
        kind = primes[0].kind
        if self.which == "all":
            return primes
        if self.which in (1, 2):
            if kind != SPLIT:
                raise ValidationError(
                    {name: f"{self.rational_prime} is {kind} in {K}, not split."}
                )
            return [primes[int(self.which) - 1]]
        expected = {"ramified": RAMIFIED, "inert": INERT}[str(self.which)]
        if kind != expected:
            raise ValidationError(
                {name: f"{self.rational_prime} is {kind} in {K}, not {expected}."}
            )
        return primes

    @classmethod
    def from_dict(cls, entry: Any, name: str) -> PrimeSelector:
        if not isinstance(entry, dict):
            raise ValidationError({name: "Expected an object."})
        p = _integer(entry.get("rational_prime"), f"{name}.rational_prime")
        if not isprime(p):
            raise ValidationError({f"{name}.rational_prime": f"{p} is not prime."})
        which = entry.get("which", "all")
        if which not in WHICH_CHOICES or isinstance(which, bool):
            raise ValidationError(
                {f"{name}.which": f"Expected one of {WHICH_CHOICES}, got {which!r}."}
            )
        return cls(p, which)


@dataclass(frozen=True)
class RamificationSpec:
    selector: PrimeSelector
    local_index: int


@dataclass(frozen=True)
class OverrideSpec:
    selector: PrimeSelector
    splitting: SplittingType


@dataclass
class Config:
    """A validated selectivity configuration."""

    m: int
    degree: int
    ramification: list[RamificationSpec] = field(default_factory=list)
    tower: TowerSpec | None = None
    overrides: list[OverrideSpec] = field(default_factory=list)
    scan_bound: int | None = None
    scan_window: int | None = None
    seed: int | None = None

    @classmethod
    def from_dict(cls, data: Any) -> Config:
        if not isinstance(data, dict):
            raise ValidationError("A config must be a JSON object.")
        m = _integer(_section(data, "base_field").get("m"), "base_field.m")
        algebra = _section(data, "algebra")
        degree = _integer(algebra.get("degree"), "algebra.degree")
        ramification = []
        for i, entry in enumerate(algebra.get("ramification") or []):
            name = f"algebra.ramification[{i}]"
            selector = PrimeSelector.from_dict(entry, name)
            local_index = _integer(entry.get("local_index"), f"{name}.local_index")
            ramification.append(RamificationSpec(selector, local_index))
        extension = _section(data, "extension")
        tower = None
        if extension.get("tower") is not None:
            tower_data = _section(extension, "tower")
            try:
                tower = TowerSpec.from_lists(
                    tower_data.get("level1") or [], tower_data.get("level2")
                )
            except (TypeError, ValueError) as ex:
                raise ValidationError({"extension.tower": str(ex)}) from ex
        overrides = []
        for i, entry in enumerate(extension.get("splitting_override") or []):
            name = f"extension.splitting_override[{i}]"
            selector = PrimeSelector.from_dict(entry, name)
            try:
                splitting = SplittingType(
                    tuple(
                        (_integer(e, name), _integer(f, name))
                        for e, f in entry.get("factors") or []
                    )
                )
            except (TypeError, ValueError) as ex:
                raise ValidationError({f"{name}.factors": str(ex)}) from ex
            overrides.append(OverrideSpec(selector, splitting))
        scan = _section(data, "scan", required=False)
        config = cls(
            m=m,
            degree=degree,
            ramification=ramification,
            tower=tower,
            overrides=overrides,
            scan_bound=(
                _integer(scan["bound"], "scan.bound") if "bound" in scan else None
            ),
            scan_window=(
                _integer(scan["window"], "scan.window") if "window" in scan else None
            ),
            seed=_integer(data["seed"], "seed") if "seed" in data else None,
        )
        config.clean()
        return config

    def clean(self) -> None:
        """Cross-field validation."""
        try:
            QuadField(self.m)
        except DomainError as ex:
            raise ValidationError({"base_field.m": str(ex)}) from ex
        if self.degree < 3:
            raise ValidationError({"algebra.degree": "Degree must be at least 3."})
        for spec in self.ramification:
            m = spec.local_index
            if m <= 1 or self.degree % m:
                raise ValidationError(
                    {
                        "algebra.ramification": (
                            f"Local index {m} at {spec.selector.rational_prime} "
                            f"must divide {self.degree} and exceed 1."
                        )
                    }
                )
        primes = [spec.selector.rational_prime for spec in self.ramification]
        if len(set(primes)) != len(primes):
            raise ValidationError({"algebra.ramification": "Primes must be distinct."})
        primes = [spec.selector.rational_prime for spec in self.overrides]
        if len(set(primes)) != len(primes):
            raise ValidationError(
                {"extension.splitting_override": "Primes must be distinct."}
            )
        if self.tower is None and not self.overrides:
            raise ValidationError(
                {"extension": "Give a tower, a splitting_override, or both."}
            )
        if self.tower is not None and self.tower.degree != self.degree:
            raise ValidationError(
                {
                    "extension.tower": (
                        f"Tower has degree {self.tower.degree}, "
                        f"algebra has degree {self.degree}."
                    )
                }
            )
        for spec in self.overrides:
            if spec.splitting.n != self.degree:
                raise ValidationError(
                    {
                        "extension.splitting_override": (
                            f"Splitting at {spec.selector.rational_prime} has "
                            f"sum e*f = {spec.splitting.n}, expected {self.degree}."
                        )
                    }
                )
        if self.scan_bound is not None and self.scan_bound < 10:
            raise ValidationError({"scan.bound": "Scan bound must be at least 10."})
        if self.scan_window is not None and self.scan_window < 1:
            raise ValidationError({"scan.window": "Scan window must be positive."})

    def algebra(self, K: QuadField) -> AlgebraData:
        local_indices = []
        for i, spec in enumerate(self.ramification):
            name = f"algebra.ramification[{i}]"
            for P in spec.selector.resolve(K, name):
                local_indices.append((P, spec.local_index))
        return AlgebraData.build(self.degree, local_indices)

    def splitting_overrides(self, K: QuadField) -> dict[PrimeOfK, SplittingType]:
        overrides = {}
        for i, spec in enumerate(self.overrides):
            name = f"extension.splitting_override[{i}]"
            for P in spec.selector.resolve(K, name):
                overrides[P] = spec.splitting
        return overrides

    def without_ramification(self) -> Config:
        """The same extension with B replaced by M_n(K)."""
        return Config(
            m=self.m,
            degree=self.degree,
            tower=self.tower,
            overrides=self.overrides,
            scan_bound=self.scan_bound,
            scan_window=self.scan_window,
            seed=self.seed,
        )


def load_config(path: str | Path) -> Config:
    """Read and validate a config file; OSError propagates for I/O problems."""
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as ex:
            raise ValidationError(f"{path} is not valid JSON: {ex}") from ex
    logger.debug("Loaded config %s", path)
    return Config.from_dict(data)
