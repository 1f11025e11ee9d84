from __future__ import annotations

from typing import Iterable, Sequence

from django import template

register = template.Library()


@register.filter
def vertex(coords: Iterable[int]) -> str:
    """Render a homothety class as [a_1,...,a_n]."""
    return "[" + ",".join(str(a) for a in coords) + "]"


@register.filter
def residues(values: Iterable[int]) -> str:
    """Render a set of residues in increasing order, e.g. {0,2}."""
    return "{" + ",".join(str(t) for t in sorted(values)) + "}"


@register.filter
def splitting(factors: Iterable[Sequence[int]]) -> str:
    """Render a splitting type as its (e,f) pairs."""
    return " ".join(f"({e},{f})" for e, f in factors)


@register.filter
def form(abc: Sequence[int]) -> str:
    a, b, c = abc
    return f"({a}, {b}, {c})"
