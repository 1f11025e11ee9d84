from __future__ import annotations

from argparse import ArgumentParser
from typing import Any

from django.core.management.base import BaseCommand, CommandError

from selective_orders.exceptions import DomainError
from selective_orders.quadfield import QuadField, class_group
from selective_orders.report import render
from selective_orders.selectivity import class_group_tree


class Command(BaseCommand):
    help = "Print the reduced forms of the class group of Q(sqrt(m))."  # noqa: A003

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument(
            "--m",
            type=int,
            required=True,
            help="Negative squarefree integer defining K",
        )

    def handle(self, *args: Any, **options: Any) -> None:
        m = options["m"]
        try:
            K = QuadField(m)
        except DomainError as ex:
            raise CommandError(str(ex), returncode=2) from ex
        context = {"m": m, "class_group": class_group_tree(class_group(K))}
        self.stdout.write(render("selective_orders/classgroup.txt", context), ending="")
