from __future__ import annotations

import json
import logging
from argparse import ArgumentParser
from pathlib import Path
from typing import Any

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from selective_orders.config import EXAMPLE_CONFIG, load_config
from selective_orders.report import render
from selective_orders.settings import JSON_INDENT, VERIFY_N_MAX
from selective_orders.verification import run_suites

from .selectivity import format_validation_error

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Run the property suites; exits 1 on the first counterexample."  # noqa: A003

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument(
            "config",
            nargs="?",
            default=str(EXAMPLE_CONFIG),
            help="Config used for the global consistency suite",
        )
        parser.add_argument(
            "--n-max",
            type=int,
            default=VERIFY_N_MAX,
            dest="n_max",
            help="Largest degree checked by the local suites",
        )
        parser.add_argument(
            "--mutate",
            action="store_true",
            help="Negate one local answer; the run must then fail",
        )
        parser.add_argument(
            "--json",
            dest="json_path",
            help="Also write the suite results to this path",
        )
        parser.add_argument("--seed", type=int, help="Overrides the config seed")
        parser.add_argument(
            "--bound", type=int, help="Overrides the Frobenius scan bound"
        )
        parser.add_argument(
            "--window", type=int, help="Overrides the stabilization window"
        )

    def handle(self, *args: Any, **options: Any) -> None:
        if options["n_max"] < 1:
            raise CommandError("--n-max must be positive", returncode=2)
        if options.get("bound") is not None and options["bound"] < 10:
            raise CommandError("--bound must be at least 10", returncode=2)
        if options.get("window") is not None and options["window"] < 1:
            raise CommandError("--window must be positive", returncode=2)
        try:
            config = load_config(options["config"])
        except OSError as ex:
            raise CommandError(
                f"Cannot read {options['config']}: {ex}", returncode=2
            ) from ex
        except ValidationError as ex:
            raise CommandError(format_validation_error(ex), returncode=2) from ex
        results = run_suites(
            config,
            options["n_max"],
            mutate=options["mutate"],
            bound=options.get("bound"),
            window=options.get("window"),
            seed=options.get("seed"),
        )
        failure = next((r for r in results if not r.passed), None)
        context = {"results": results, "passed": failure is None, "failure": failure}
        self.stdout.write(render("selective_orders/verify.txt", context), ending="")
        if options.get("json_path"):
            data = {
                "passed": failure is None,
                "suites": [result.as_dict() for result in results],
            }
            try:
                Path(options["json_path"]).write_text(
                    json.dumps(data, sort_keys=True, indent=JSON_INDENT) + "\n"
                )
            except OSError as ex:
                raise CommandError(
                    f"Cannot write {options['json_path']}: {ex}", returncode=2
                ) from ex
            logger.info("Wrote suite results to %s", options["json_path"])
        if failure is not None:
            raise CommandError(
                f"{failure.name}: {failure.counterexample}", returncode=1
            )
