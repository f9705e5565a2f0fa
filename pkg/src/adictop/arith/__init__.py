"""Exact scalar arithmetic on Q and Q(t)."""

from .crt import approximate, bezout, crt_solve, poly_crt, rational_reconstruct, residue_mod
from .local import LocalContext, LocalExpansion, local_expand
from .mpoly import MPoly
from .parse import (as_element, evaluate, format_element, parse_element, parse_poly,
                    parse_system, parse_valuation)
from .poly import Poly, RationalFunction, T
from .valuation import INF, INVERSE_T, Derivation, Valuation, derive, is_prime, val

__all__ = [
    "INF", "INVERSE_T", "T", "Derivation", "LocalContext", "LocalExpansion", "MPoly",
    "Poly", "RationalFunction", "Valuation", "approximate", "as_element", "bezout",
    "crt_solve", "derive", "evaluate", "format_element", "is_prime", "local_expand",
    "parse_element", "parse_poly", "parse_system", "parse_valuation", "poly_crt",
    "rational_reconstruct", "residue_mod", "val",
]
