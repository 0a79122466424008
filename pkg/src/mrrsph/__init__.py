"""Spherical maximal-rank reductive subgroups of simple algebraic groups.

Root systems and their closed subsystems are handled combinatorially; a
separate brute-force oracle counts double cosets in SL3(q) and Sp4(q).
"""

from __future__ import annotations

from .dimcrit import CriterionReport, criterion_value, search_infinite_witness, pair_infiniteness_check
from .rootsys import RootSystem, Subsystem, build_root_system, closure, parse_group
from .spherical import ClassificationReport, classify, find_complement, in_table, is_anti_open
from .subsystems import (
    LabelError,
    MRRSubgroup,
    TypeLabel,
    UndecidedError,
    apply_recipe,
    enumerate_generic_mrr,
    find_mrr,
    levi,
)

__version__ = "0.1.0"

__all__ = [
    "RootSystem",
    "Subsystem",
    "build_root_system",
    "parse_group",
    "closure",
    "TypeLabel",
    "MRRSubgroup",
    "LabelError",
    "UndecidedError",
    "enumerate_generic_mrr",
    "find_mrr",
    "apply_recipe",
    "levi",
    "classify",
    "ClassificationReport",
    "find_complement",
    "in_table",
    "is_anti_open",
    "CriterionReport",
    "criterion_value",
    "search_infinite_witness",
    "pair_infiniteness_check",
]
