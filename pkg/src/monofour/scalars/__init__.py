"""Exact arithmetic substrate: rationals, polynomials, rational functions,
Smith normal forms, small finite fields, cyclotomic scalars, residue rings."""

from fractions import Fraction

from .poly import Poly, frac, poly_gcd, shift_poly
from .ratfun import RatFun, UnsupportedInputError, partial_fractions
from .snf import (
    int_smith,
    kernel_basis,
    poly_det,
    poly_smith,
    rational_kernel_basis,
    rational_rank,
    rational_solve_dim,
)
from .ffield import Fq
from .cyclotomic import CycScalar, cyclotomic_poly, zeta
from .residue import ResidueRingElem

Rational = Fraction

__all__ = [
    "Rational",
    "Fraction",
    "frac",
    "Poly",
    "poly_gcd",
    "shift_poly",
    "RatFun",
    "partial_fractions",
    "UnsupportedInputError",
    "poly_smith",
    "int_smith",
    "kernel_basis",
    "poly_det",
    "rational_solve_dim",
    "rational_rank",
    "rational_kernel_basis",
    "Fq",
    "CycScalar",
    "cyclotomic_poly",
    "zeta",
    "ResidueRingElem",
]
