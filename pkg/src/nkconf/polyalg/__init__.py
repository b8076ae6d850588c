"""Exact algebra: rational polynomials, gcds, resultants, real roots."""

from .poly import (
    Poly,
    content_and_primitive,
    divexact,
    divides,
    gcd,
    parse_poly,
    prem,
    squarefree_part,
)
from .resultant import resultant, sylvester_matrix
from .roots import RealRoot, count_real_roots, isolate_real_roots, sign_at_root

__all__ = [
    "Poly",
    "RealRoot",
    "content_and_primitive",
    "count_real_roots",
    "divexact",
    "divides",
    "gcd",
    "isolate_real_roots",
    "parse_poly",
    "prem",
    "resultant",
    "sign_at_root",
    "squarefree_part",
    "sylvester_matrix",
]
