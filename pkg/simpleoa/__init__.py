"""
simpleoa: orthogonal arrays, their row-count bounds, and correlation-immune Boolean functions
"""

__version__ = "0.1.0"
__author__ = "simpleoa Team"

from simpleoa.arrays import SymbolArray, parse_oa, serialize_oa
from simpleoa.bounds import bound_report, rao_bound, theorem1_verdict
from simpleoa.lp import lp_bound, verify_certificate
from simpleoa.search import exists_oa, min_rows
from simpleoa.strength import max_strength, verify_strength

__all__ = [
    "SymbolArray",
    "parse_oa",
    "serialize_oa",
    "verify_strength",
    "max_strength",
    "rao_bound",
    "theorem1_verdict",
    "bound_report",
    "lp_bound",
    "verify_certificate",
    "exists_oa",
    "min_rows",
]
