"""
Exact linear algebra over the rationals, backed by sympy matrices.
"""

from fractions import Fraction
from typing import List, Optional, Sequence

import sympy


def _to_sympy(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def matrix(rows: Sequence[Sequence]) -> sympy.Matrix:
    return sympy.Matrix([[_to_sympy(x) for x in row] for row in rows])


def solve(rows: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    """Solve the square nonsingular system rows · x = rhs exactly."""
    solution = matrix(rows).LUsolve(sympy.Matrix([_to_sympy(b) for b in rhs]))
    return [_to_fraction(x) for x in solution]


def inverse(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    inv = matrix(rows).inv()
    return [[_to_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return matrix(rows).rank()


def kernel_vector(rows: Sequence[Sequence]) -> Optional[List[Fraction]]:
    """The generator of a one-dimensional null space, or None otherwise."""
    basis = matrix(rows).nullspace()
    if len(basis) != 1:
        return None
    return [_to_fraction(x) for x in basis[0]]
