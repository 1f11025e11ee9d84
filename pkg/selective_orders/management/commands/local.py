"""
Print the local embedding certificate for an unramified splitting type.

    $ python manage.py local --n 4 --f 1,1,2

lists the types of maximal orders of M_n(K_P) containing the local ring
of integers of L, the vertices of the fundamental chamber that do, and
every block-constant vertex with coordinates below n.

"""

from __future__ import annotations

from argparse import ArgumentParser
from typing import Any

from django.core.management.base import BaseCommand, CommandError

from selective_orders.building import (
    SplittingType,
    admissible_types,
    chamber_vertices,
    enumerate_containing_vertices,
    vertex_type,
)
from selective_orders.exceptions import DomainError
from selective_orders.report import render


def parse_composition(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError as ex:
        raise CommandError(
            f"--f must be comma-separated integers, got {value!r}", returncode=2
        ) from ex


class Command(BaseCommand):
    help = "Print the local embedding certificate for inertia degrees f."  # noqa: A003

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True, help="Degree of L over K")
        parser.add_argument(
            "--f",
            required=True,
            help="Inertia degrees of the primes of L, e.g. 1,1,2",
        )

    def handle(self, *args: Any, **options: Any) -> None:
        n = options["n"]
        inertia = parse_composition(options["f"])
        if sum(inertia) != n or min(inertia) < 1:
            raise CommandError(
                f"Inertia degrees {options['f']} are not a composition of {n}",
                returncode=2,
            )
        try:
            s = SplittingType.unramified(inertia)
        except DomainError as ex:
            raise CommandError(str(ex), returncode=2) from ex
        containing = enumerate_containing_vertices(s, n)
        context = {
            "n": n,
            "bound": n,
            "splitting": s.factors,
            "admissible_types": admissible_types(s),
            "chamber_vertices": [v.coords for v in chamber_vertices(s)],
            "containing_vertices": [
                {"vertex": v.coords, "type": vertex_type(v)} for v in containing
            ],
        }
        self.stdout.write(render("selective_orders/local.txt", context), ending="")
