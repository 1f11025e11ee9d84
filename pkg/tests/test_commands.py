from __future__ import annotations

import json
from fractions import Fraction
from io import StringIO
from pathlib import Path
from typing import Any

import pytest
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError

from selective_orders.config import EXAMPLE_CONFIG
from selective_orders.management.commands.local import parse_composition
from selective_orders.management.commands.selectivity import format_validation_error
from selective_orders.report import Report

EXAMPLE = json.loads(EXAMPLE_CONFIG.read_text())


def run(*args: str) -> str:
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


def write_config(path: Path, data: dict[str, Any]) -> str:
    path.write_text(json.dumps(data))
    return str(path)


class TestLocalCommand:
    def test_mixed_splitting(self) -> None:
        out = run("local", "--n", "4", "--f", "1,1,2")
        assert out.startswith("Local embedding certificate for n=4\n")
        assert "splitting type: (1,1) (1,1) (1,2)" in out
        assert "admissible types: {0,1,2,3}" in out
        assert "chamber vertices: [0,0,0,0] [1,0,0,0] [1,1,0,0]" in out
        assert "containing vertices (bound 4): 37" in out
        assert "  [1,1,0,0] type 2\n" in out

    def test_inert(self) -> None:
        out = run("local", "--n", "3", "--f", "3")
        assert "admissible types: {0}" in out
        assert "containing vertices (bound 3): 1" in out

    @pytest.mark.parametrize("n,f", [("4", "1,2"), ("4", "0,4"), ("4", "2,x")])
    def test_bad_composition(self, n: str, f: str) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("local", "--n", n, "--f", f)
        assert excinfo.value.returncode == 2

    def test_parse_composition(self) -> None:
        assert parse_composition("1,1,2") == (1, 1, 2)
        assert parse_composition("4") == (4,)


class TestClassgroupCommand:
    def test_example_field(self) -> None:
        out = run("classgroup", "--m=-14")
        assert "discriminant -56" in out
        assert "h = 4, exponent 4, Z/4" in out
        assert "generators: (3, 2, 5)" in out
        assert "  (2, 0, 7) order 2\n" in out

    def test_trivial_group(self) -> None:
        out = run("classgroup", "--m=-1")
        assert "h = 1, exponent 1, trivial" in out
        assert "generators: none" in out

    @pytest.mark.parametrize("m", ["3", "-4", "0"])
    def test_invalid(self, m: str) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("classgroup", f"--m={m}")
        assert excinfo.value.returncode == 2


class TestSelectivityCommand:
    def test_example(self, tmp_path: Path) -> None:
        json_path = tmp_path / "out.json"
        out = run("selectivity", str(EXAMPLE_CONFIG), "--json", str(json_path))
        assert "status: ok" in out
        assert "selectivity ratio: 1/2" in out
        assert "  P_7 ramified in K, class (2, 0, 7) of order 2 in G_R\n" in out
        text = json_path.read_text()
        assert text.endswith("}\n")
        assert Report.parse(text).ratio == Fraction(1, 2)

    def test_seed_override(self, tmp_path: Path) -> None:
        json_path = tmp_path / "out.json"
        run("selectivity", str(EXAMPLE_CONFIG), "--seed", "7", "--json", str(json_path))
        assert Report.parse(json_path.read_text())["seed"] == 7

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("selectivity", str(tmp_path / "missing.config"))
        assert excinfo.value.returncode == 2

    def test_invalid_config(self, tmp_path: Path) -> None:
        path = write_config(tmp_path / "bad.config", dict(EXAMPLE, scan={"bound": 5}))
        with pytest.raises(CommandError) as excinfo:
            run("selectivity", path)
        assert excinfo.value.returncode == 2
        assert "scan.bound" in str(excinfo.value)

    def test_bound_too_small(self) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("selectivity", str(EXAMPLE_CONFIG), "--bound", "5")
        assert excinfo.value.returncode == 2

    def test_abhn_failure(self, tmp_path: Path) -> None:
        override = {
            "rational_prime": 137,
            "which": "all",
            "factors": [[1, 1], [1, 1], [1, 2]],
        }
        extension = dict(EXAMPLE["extension"], splitting_override=[override])
        data = dict(EXAMPLE, extension=extension)
        path = write_config(tmp_path / "abhn.config", data)
        json_path = tmp_path / "out.json"
        with pytest.raises(CommandError) as excinfo:
            run("selectivity", path, "--json", str(json_path))
        assert excinfo.value.returncode == 3
        assert Report.parse(json_path.read_text()).status == "abhn_fail"

    def test_inconclusive(self) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("selectivity", str(EXAMPLE_CONFIG), "--bound", "10")
        assert excinfo.value.returncode == 4


class TestVerifyCommand:
    def test_passes(self) -> None:
        out = run("verify", "--n-max", "3")
        assert "oracle_equivalence: " in out
        assert out.endswith("All 6 suites passed.\n")

    def test_mutate(self) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("verify", "--n-max", "2", "--mutate")
        assert excinfo.value.returncode == 1
        assert str(excinfo.value).startswith("oracle_equivalence: ")

    def test_json_and_seed(self, tmp_path: Path) -> None:
        json_path = tmp_path / "verify.json"
        run("verify", "--n-max", "2", "--seed", "7", "--json", str(json_path))
        data = json.loads(json_path.read_text())
        assert data["passed"] is True
        assert [suite["name"] for suite in data["suites"]][-1] == (
            "selectivity_consistency"
        )

    def test_scan_bound(self) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("verify", "--n-max", "2", "--bound", "10", "--window", "5")
        assert excinfo.value.returncode == 1
        assert str(excinfo.value).startswith(
            "selectivity_consistency: inconclusive scan: "
        )

    @pytest.mark.parametrize("flag,value", [("--bound", "5"), ("--window", "0")])
    def test_bad_scan_flags(self, flag: str, value: str) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("verify", flag, value)
        assert excinfo.value.returncode == 2

    def test_bad_n_max(self) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("verify", "--n-max", "0")
        assert excinfo.value.returncode == 2

    def test_missing_config(self, tmp_path: Path) -> None:
        with pytest.raises(CommandError) as excinfo:
            run("verify", str(tmp_path / "missing.config"))
        assert excinfo.value.returncode == 2


def test_format_validation_error() -> None:
    ex = ValidationError({"scan.bound": "Too small.", "base_field.m": "Not negative."})
    assert format_validation_error(ex) == (
        "base_field.m: Not negative.; scan.bound: Too small."
    )
    assert format_validation_error(ValidationError("Broken.")) == "Broken."
