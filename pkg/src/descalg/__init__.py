"""Descent algebras of the symmetric, hyperoctahedral and colored permutation groups."""
from __future__ import annotations

from .perm_core import (
    BudgetExceeded,
    ColoredPermutation,
    GroupDescriptor,
    InvalidInput,
    Permutation,
    SignedPermutation,
    compose,
    invert,
    statistic,
)
from .qpoly import Poly, q_binomial

__all__ = [
    "BudgetExceeded", "ColoredPermutation", "GroupDescriptor", "InvalidInput",
    "Permutation", "Poly", "SignedPermutation", "compose", "invert", "q_binomial",
    "statistic",
]
__version__ = "0.1.0"
