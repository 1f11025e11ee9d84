"""
Run the selectivity analysis for a config file.

    $ python manage.py selectivity selective_orders/configs/example_paper.config \
        --json out.json

The text report goes to stdout. The exit status follows the report
status: 0 for ok, 3 when L does not embed in B, 4 for an inconclusive
scan. Unreadable or invalid configs exit with 2.

"""

from __future__ import annotations

import logging
from argparse import ArgumentParser
from pathlib import Path
from typing import Any

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from selective_orders.config import load_config
from selective_orders.exceptions import ConfigurationError, DomainError
from selective_orders.selectivity import selectivity_report

logger = logging.getLogger(__name__)


def format_validation_error(ex: ValidationError) -> str:
    if hasattr(ex, "error_dict"):
        return "; ".join(
            f"{field}: {' '.join(messages)}"
            for field, messages in sorted(ex.message_dict.items())
        )
    return " ".join(ex.messages)


class Command(BaseCommand):
    help = "Compute which maximal orders in a genus contain O_L."  # noqa: A003

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("config", help="Path to a JSON config file")
        parser.add_argument(
            "--json",
            dest="json_path",
            help="Also write the serialized report to this path",
        )
        parser.add_argument("--seed", type=int, help="Overrides the config seed")
        parser.add_argument(
            "--bound", type=int, help="Overrides the Frobenius scan bound"
        )
        parser.add_argument(
            "--window", type=int, help="Overrides the stabilization window"
        )

    def handle(self, *args: Any, **options: Any) -> None:
        path = options["config"]
        try:
            config = load_config(path)
            report = selectivity_report(
                config,
                bound=options.get("bound"),
                window=options.get("window"),
                seed=options.get("seed"),
            )
        except OSError as ex:
            raise CommandError(f"Cannot read {path}: {ex}", returncode=2) from ex
        except ValidationError as ex:
            raise CommandError(
                f"Invalid config {path}: {format_validation_error(ex)}", returncode=2
            ) from ex
        except (ConfigurationError, DomainError) as ex:
            raise CommandError(str(ex), returncode=2) from ex
        self.stdout.write(report.render(), ending="")
        if options.get("json_path"):
            try:
                Path(options["json_path"]).write_text(report.serialize() + "\n")
            except OSError as ex:
                raise CommandError(
                    f"Cannot write {options['json_path']}: {ex}", returncode=2
                ) from ex
            logger.info("Wrote report to %s", options["json_path"])
        if report.exit_code:
            raise CommandError(
                report.get("message", report.status), returncode=report.exit_code
            )
