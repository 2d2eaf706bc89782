"""Exception types shared by all modules."""

from __future__ import annotations


class InputError(ValueError):
    """Malformed input or violated precondition."""


class BudgetExceeded(RuntimeError):
    """A search hit its configured node budget before finishing.

    ``lower`` and ``upper`` carry the best bounds found so far (``upper`` may be
    ``None`` if no feasible solution was seen); ``witness`` is the incumbent.
    """

    def __init__(self, message, *, lower=None, upper=None, witness=None, consumed=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.witness = witness
        self.consumed = consumed


class InvariantViolation(RuntimeError):
    """A proven guarantee failed on a concrete instance."""
