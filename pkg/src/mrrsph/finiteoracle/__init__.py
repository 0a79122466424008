"""Brute-force double-coset counts in SL3(q) and Sp4(q) over tiny fields."""

from .counts import (
    COLUMNS,
    burnside_count,
    charsum_count,
    count_row,
    double_coset_count,
    equivalence_classes,
    grouped_sum,
    growth_series,
    induced_trivial,
    z_set,
)
from .field import GF, Field
from .groups import FiniteGLT, FiniteSubgroup, SizeCapError, build_group, flag_count_formula, order_formula

__all__ = [
    "COLUMNS",
    "GF",
    "Field",
    "FiniteGLT",
    "FiniteSubgroup",
    "SizeCapError",
    "build_group",
    "burnside_count",
    "charsum_count",
    "count_row",
    "double_coset_count",
    "equivalence_classes",
    "flag_count_formula",
    "grouped_sum",
    "growth_series",
    "induced_trivial",
    "order_formula",
    "z_set",
]
