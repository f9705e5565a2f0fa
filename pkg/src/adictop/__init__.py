"""Exact arithmetic on ring topologies of Q and Q(t)."""

from .arith import (INF, LocalContext, MPoly, Poly, RationalFunction, T, Valuation, as_element,
                    parse_element, parse_valuation, val)
from .certificate import SCHEMA, Certificate
from .errors import AdictopError

__version__ = "0.1.0"

__all__ = ["INF", "LocalContext", "MPoly", "Poly", "RationalFunction", "T", "Valuation",
           "as_element", "parse_element", "parse_valuation", "val", "SCHEMA", "Certificate",
           "AdictopError", "__version__"]
