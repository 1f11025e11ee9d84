from __future__ import annotations

from django.apps import AppConfig


class SelectiveOrdersAppConfig(AppConfig):
    """AppConfig for selective_orders app."""

    name = "selective_orders"
    verbose_name = "Selectivity of maximal orders"
