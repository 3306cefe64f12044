"""Distributions of mesh patterns over permutations: exhaustive counts,
closed forms and the Nr. 48 / Nr. 49 bijection."""

from .bijections import apply_f, decompose, lex_bijection_f, map_g, map_g_inverse
from . import catalog
from .catalog import entry, lookup
from .oracle import avoiders_lex, brute_distribution, brute_joint, brute_row
from .patterns import (
    STRONG_FIXED_POINT,
    InvalidInput,
    MeshPattern,
    count_occurrences,
    find_occurrences,
    format_pattern,
    parse_pattern,
    parse_permutation,
    transform,
)
from .series import Poly, Series, reciprocal
from .tables import DistributionTable, JointTable

__all__ = [
    "STRONG_FIXED_POINT",
    "DistributionTable",
    "InvalidInput",
    "JointTable",
    "MeshPattern",
    "Poly",
    "Series",
    "apply_f",
    "avoiders_lex",
    "brute_distribution",
    "brute_joint",
    "brute_row",
    "catalog",
    "count_occurrences",
    "decompose",
    "entry",
    "find_occurrences",
    "format_pattern",
    "lex_bijection_f",
    "lookup",
    "map_g",
    "map_g_inverse",
    "parse_pattern",
    "parse_permutation",
    "reciprocal",
    "transform",
]
