from __future__ import annotations

import pytest

from selective_orders.config import EXAMPLE_CONFIG, Config, load_config
from selective_orders.verification import (
    SuiteResult,
    admissible_types_identity,
    class_group_laws,
    inert_uniqueness,
    multiplicative_closure,
    oracle_equivalence,
    run_suites,
    selectivity_consistency,
)


def test_suite_result_str() -> None:
    assert str(SuiteResult("demo", 3)) == "demo: 3 checked, ok"
    failed = SuiteResult("demo", 1, "x")
    assert not failed.passed
    assert str(failed) == "demo: 1 checked, FAILED: x"


@pytest.mark.parametrize(
    "suite",
    [
        lambda: oracle_equivalence(3, primes=(2, 3)),
        lambda: admissible_types_identity(5),
        lambda: inert_uniqueness((3, 4), max_bound=4),
        lambda: class_group_laws({-23: 3, -56: 4}),
        lambda: multiplicative_closure(3, primes=(2, 3)),
    ],
)
def test_local_suites_pass(suite) -> None:  # type: ignore[no-untyped-def]
    result = suite()
    assert result.passed, result.counterexample
    assert result.checked > 0


def test_oracle_equivalence__full_scale() -> None:
    # 3^n - 2^n classes for each of the 2^(n-1) compositions of n
    result = oracle_equivalence(5, primes=(2, 3, 5))
    assert result.passed, result.counterexample
    assert result.checked == 3 * sum(2 ** (n - 1) * (3**n - 2**n) for n in range(1, 6))


def test_admissible_types_identity__up_to_six() -> None:
    result = admissible_types_identity(6)
    assert result.passed, result.counterexample
    assert result.checked == 63


def test_oracle_equivalence__mutated() -> None:
    result = oracle_equivalence(2, primes=(3,), mutate=True)
    assert not result.passed
    assert "block constancy says" in result.counterexample


def test_class_group_laws__wrong_class_number() -> None:
    result = class_group_laws({-56: 2})
    assert result.counterexample == "h(-56) = 4, expected 2"


def test_selectivity_consistency__example() -> None:
    result = selectivity_consistency(load_config(EXAMPLE_CONFIG))
    assert result.passed, result.counterexample


def test_selectivity_consistency__hilbert_class_field() -> None:
    config = Config.from_dict(
        {
            "base_field": {"m": -23},
            "algebra": {"degree": 3},
            "extension": {"tower": {"level1": [[-1, 0], [-1, 0], [0, 0], [1, 0]]}},
            "scan": {"bound": 500, "window": 20},
        }
    )
    result = selectivity_consistency(config)
    assert result.passed, result.counterexample


def test_selectivity_consistency__inconclusive() -> None:
    result = selectivity_consistency(load_config(EXAMPLE_CONFIG), bound=10)
    assert result.counterexample.startswith("inconclusive scan: ")


def test_run_suites__scan_bound() -> None:
    results = run_suites(load_config(EXAMPLE_CONFIG), n_max=2, bound=10, seed=7)
    assert results[-1].name == "selectivity_consistency"
    assert results[-1].counterexample.startswith("inconclusive scan: ")
    assert all(r.passed for r in results[:-1])


def test_suite_result_as_dict() -> None:
    assert SuiteResult("demo", 1, "x").as_dict() == {
        "name": "demo",
        "checked": 1,
        "passed": False,
        "counterexample": "x",
    }


def test_run_suites() -> None:
    results = run_suites(None, n_max=2)
    assert [r.name for r in results] == [
        "oracle_equivalence",
        "admissible_types_identity",
        "inert_uniqueness",
        "class_group_laws",
        "multiplicative_closure",
    ]
    assert all(r.passed for r in results)
    assert not run_suites(None, n_max=2, mutate=True)[0].passed
