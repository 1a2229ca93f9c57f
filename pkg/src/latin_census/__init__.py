"""Exact counts of reduced Latin rectangles, Latin squares, derangements and
menage numbers, by exhaustive search, classical closed forms and a general
inclusion-exclusion formula over index tuples."""
from .closed_forms import derangements, k3_riordan, k3_yamamoto, k4_explicit, touchard
from .errors import BudgetExceeded, InapplicableMethod
from .general import k_general, latin_squares
from .oracle import (
    brute_derangements,
    brute_latin_squares,
    brute_reduced_rectangles,
    brute_very_reduced,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "InapplicableMethod",
    "brute_derangements",
    "brute_latin_squares",
    "brute_reduced_rectangles",
    "brute_very_reduced",
    "derangements",
    "k3_riordan",
    "k3_yamamoto",
    "k4_explicit",
    "k_general",
    "latin_squares",
    "touchard",
]
