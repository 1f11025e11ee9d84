from __future__ import annotations

import copy
import json
from pathlib import Path
from typing import Any

import pytest
from django.core.exceptions import ValidationError

from selective_orders.building import SplittingType
from selective_orders.config import EXAMPLE_CONFIG, Config, load_config
from selective_orders.quadfield import INERT, QuadField

EXAMPLE: dict[str, Any] = {
    "base_field": {"m": -14},
    "algebra": {
        "degree": 4,
        "ramification": [{"rational_prime": 137, "which": "all", "local_index": 2}],
    },
    "extension": {
        "tower": {"level1": [[33, 44], [22, 4], [1, 0]], "level2": [5, 0, 1]},
    },
    "scan": {"bound": 5000, "window": 50},
    "seed": 1009,
}


def example(**changes: Any) -> dict[str, Any]:
    """Copy of EXAMPLE with top-level sections replaced."""
    data = copy.deepcopy(EXAMPLE)
    data.update(changes)
    return data


def error_fields(data: Any) -> set[str]:
    with pytest.raises(ValidationError) as excinfo:
        Config.from_dict(data)
    return set(excinfo.value.message_dict)


class TestFromDict:
    def test_example(self) -> None:
        config = Config.from_dict(EXAMPLE)
        assert config.m == -14
        assert config.degree == 4
        assert config.tower is not None
        assert config.tower.degrees == (2, 2)
        assert config.scan_bound == 5000
        assert config.scan_window == 50
        assert config.seed == 1009
        assert [spec.local_index for spec in config.ramification] == [2]

    def test_optional_sections(self) -> None:
        data = example()
        del data["scan"]
        del data["seed"]
        config = Config.from_dict(data)
        assert config.scan_bound is None
        assert config.seed is None

    def test_integer_strings(self) -> None:
        data = example(base_field={"m": "-14"}, seed="123456789012345678901234567890")
        config = Config.from_dict(data)
        assert config.m == -14
        assert config.seed == 123456789012345678901234567890

    def test_not_an_object(self) -> None:
        with pytest.raises(ValidationError):
            Config.from_dict([1, 2, 3])

    @pytest.mark.parametrize(
        "changes,field",
        [
            ({"base_field": None}, "base_field"),
            ({"base_field": {"m": -4}}, "base_field.m"),
            ({"base_field": {"m": 5}}, "base_field.m"),
            ({"base_field": {"m": True}}, "base_field.m"),
            ({"algebra": {"degree": 2}}, "algebra.degree"),
            ({"algebra": "four"}, "algebra"),
            ({"extension": {}}, "extension"),
            ({"scan": {"bound": 5}}, "scan.bound"),
            ({"scan": {"window": 0}}, "scan.window"),
        ],
    )
    def test_invalid_field(self, changes: dict, field: str) -> None:
        assert field in error_fields(example(**changes))

    @pytest.mark.parametrize(
        "entry,field",
        [
            (
                {"rational_prime": 9, "local_index": 2},
                "algebra.ramification[0].rational_prime",
            ),
            (
                {"rational_prime": 137, "which": "both", "local_index": 2},
                "algebra.ramification[0].which",
            ),
            (
                {"rational_prime": 137, "which": True, "local_index": 2},
                "algebra.ramification[0].which",
            ),
            ({"rational_prime": 137, "local_index": 3}, "algebra.ramification"),
            ({"rational_prime": 137, "local_index": 1}, "algebra.ramification"),
        ],
    )
    def test_invalid_ramification(self, entry: dict, field: str) -> None:
        data = example(algebra={"degree": 4, "ramification": [entry]})
        assert field in error_fields(data)

    def test_repeated_ramified_prime(self) -> None:
        entry = {"rational_prime": 137, "which": 1, "local_index": 2}
        data = example(algebra={"degree": 4, "ramification": [entry, entry]})
        assert error_fields(data) == {"algebra.ramification"}

    def test_tower_not_monic(self) -> None:
        data = example(extension={"tower": {"level1": [[1, 0], [2, 0]]}})
        assert error_fields(data) == {"extension.tower"}

    def test_tower_degree_mismatch(self) -> None:
        data = example(extension={"tower": {"level1": [[0, 0], [1, 0]]}})
        assert error_fields(data) == {"extension.tower"}

    def test_override_degree_mismatch(self) -> None:
        override = {"rational_prime": 3, "which": "all", "factors": [[1, 2]]}
        extension = dict(EXAMPLE["extension"], splitting_override=[override])
        assert error_fields(example(extension=extension)) == {
            "extension.splitting_override"
        }

    def test_override_bad_factor(self) -> None:
        override = {"rational_prime": 3, "factors": [[1, 0], [1, 4]]}
        data = example(extension={"splitting_override": [override]})
        assert error_fields(data) == {"extension.splitting_override[0].factors"}


class TestResolution:
    def test_algebra(self) -> None:
        K = QuadField(-14)
        B = Config.from_dict(EXAMPLE).algebra(K)
        assert [entry.prime.name for entry in B.ramification] == [
            "P_137,1",
            "P_137,2",
        ]
        assert {entry.local_index for entry in B.ramification} == {2}

    def test_which_label(self) -> None:
        entry = {"rational_prime": 137, "which": 2, "local_index": 4}
        config = Config.from_dict(
            example(algebra={"degree": 4, "ramification": [entry]})
        )
        [ramification] = config.algebra(QuadField(-14)).ramification
        assert ramification.prime.name == "P_137,2"
        assert ramification.is_total

    @pytest.mark.parametrize(
        "p,which", [(7, 1), (11, "ramified"), (3, "inert"), (11, 2)]
    )
    def test_which_mismatch(self, p: int, which: Any) -> None:
        entry = {"rational_prime": p, "which": which, "local_index": 2}
        config = Config.from_dict(
            example(algebra={"degree": 4, "ramification": [entry]})
        )
        with pytest.raises(ValidationError) as excinfo:
            config.algebra(QuadField(-14))
        assert set(excinfo.value.message_dict) == {"algebra.ramification[0]"}

    def test_splitting_overrides(self) -> None:
        overrides = [
            {"rational_prime": 11, "which": "inert", "factors": [[1, 2], [1, 2]]},
            {"rational_prime": 3, "which": 1, "factors": [[1, 4]]},
        ]
        config = Config.from_dict(example(extension={"splitting_override": overrides}))
        assert config.tower is None
        resolved = config.splitting_overrides(QuadField(-14))
        assert {P.name: s for P, s in resolved.items()} == {
            "P_11": SplittingType(((1, 2), (1, 2))),
            "P_3,1": SplittingType(((1, 4),)),
        }
        assert [P.kind for P in resolved][0] == INERT

    def test_without_ramification(self) -> None:
        config = Config.from_dict(EXAMPLE).without_ramification()
        assert config.ramification == []
        assert config.algebra(QuadField(-14)).is_unramified
        assert config.seed == 1009


class TestLoadConfig:
    def test_bundled_example(self) -> None:
        config = load_config(EXAMPLE_CONFIG)
        assert EXAMPLE_CONFIG.name == "example_paper.config"
        assert config == Config.from_dict(EXAMPLE)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(OSError):
            load_config(tmp_path / "missing.config")

    def test_invalid_json(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.config"
        path.write_text("{not json")
        with pytest.raises(ValidationError):
            load_config(path)

    def test_round_trip_through_file(self, tmp_path: Path) -> None:
        path = tmp_path / "example.config"
        path.write_text(json.dumps(EXAMPLE))
        assert load_config(str(path)).m == -14
