"""Desk-scale checks for better-quasi-order constructions: finite quasi
orders, hereditarily finite sets, ordinal notations, labelled trees,
barriers and bad-array search."""
from .barriers import ArrayTable, TruncatedBlock, lift_array, star_construction, triangle
from .qo import OrderSpec, leq
from .search import find_bad_array, threshold
from .suites import SUITES, run_suite
from .syntax import parse_elem, parse_order, parse_term

__all__ = [
    "ArrayTable", "OrderSpec", "SUITES", "TruncatedBlock", "find_bad_array", "leq", "lift_array",
    "parse_elem", "parse_order", "parse_term", "run_suite", "star_construction", "threshold",
    "triangle",
]
