"""Global search budget handling."""

from __future__ import annotations

import os

from .errors import InputError

ENV_VAR = "HELLYCOVER_BUDGET"
DEFAULT_BUDGET = 5_000_000


def default_budget() -> int:
    value = os.environ.get(ENV_VAR)
    if value:
        try:
            return int(value)
        except ValueError:
            raise InputError(f"{ENV_VAR} must be an integer, got {value!r}") from None
    return DEFAULT_BUDGET


def resolve(budget: int | None) -> int:
    return default_budget() if budget is None else int(budget)
