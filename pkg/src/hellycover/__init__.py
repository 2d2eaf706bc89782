"""Hypergraph covers under Helly-type conditions, and the bridge to
monochromatic component covers of edge-coloured graphs."""

__version__ = "0.1.0"

from .errors import BudgetExceeded, InputError, InvariantViolation
from .hypergraph import Hypergraph, PartiteStructure
from .solvers import nu_exact, tau_exact, tau_fractional, transversal_cover

__all__ = [
    "BudgetExceeded",
    "Hypergraph",
    "InputError",
    "InvariantViolation",
    "PartiteStructure",
    "nu_exact",
    "tau_exact",
    "tau_fractional",
    "transversal_cover",
]
