"""
The selectivity report: a tree of plain values, its JSON form and its text form.

The tree holds only dicts, lists, strings, booleans, None, integers and
Fractions, so serializing and parsing are exact inverses. Integers beyond
the 53-bit range of JSON consumers are written as decimal strings, and
rationals as "p/q" strings in lowest terms.

"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from django.core.serializers.json import DjangoJSONEncoder
from django.template.loader import render_to_string

from .settings import JSON_INDENT

SAFE_INTEGER = 2**53

EXIT_CODES = {"ok": 0, "abhn_fail": 3, "inconclusive": 4}

RATIONAL_PATTERN = re.compile(r"^-?\d+/\d+$")
INTEGER_PATTERN = re.compile(r"^-?\d+$")


class ReportEncoder(DjangoJSONEncoder):
    """Encode Fractions as "p/q" strings."""

    def default(self, o: Any) -> Any:
        if isinstance(o, Fraction):
            return f"{o.numerator}/{o.denominator}"
        return super().default(o)


def _protect(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= SAFE_INTEGER else value
    if isinstance(value, dict):
        return {key: _protect(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_protect(item) for item in value]
    return value


def _restore(value: Any) -> Any:
    if isinstance(value, str):
        if RATIONAL_PATTERN.match(value):
            return Fraction(value)
        if INTEGER_PATTERN.match(value) and abs(int(value)) >= SAFE_INTEGER:
            return int(value)
        return value
    if isinstance(value, dict):
        return {key: _restore(item) for key, item in value.items()}
    if isinstance(value, list):
        return [_restore(item) for item in value]
    return value


@dataclass
class Report:
    """Structured result of one selectivity run."""

    tree: dict

    @property
    def status(self) -> str:
        return self.tree["status"]

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    @property
    def ratio(self) -> Fraction | None:
        return self.tree.get("ratio")

    def __getitem__(self, key: str) -> Any:
        return self.tree[key]

    def get(self, key: str, default: Any = None) -> Any:
        return self.tree.get(key, default)

    def serialize(self) -> str:
        return json.dumps(
            _protect(self.tree),
            cls=ReportEncoder,
            sort_keys=True,
            indent=JSON_INDENT,
            separators=(",", ": "),
        )

    @classmethod
    def parse(cls, text: str) -> Report:
        return cls(_restore(json.loads(text)))

    def render(self) -> str:
        return render("selective_orders/report.txt", {"report": self.tree})


def render(template_name: str, context: dict) -> str:
    """Render one of the app's plain-text templates."""
    return render_to_string(template_name, context)
