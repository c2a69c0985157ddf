"""
Continued-fraction streams with exact integer partial quotients.

Irrational weight ratios only ever appear as such streams; their
convergents are the rational ratios the surface module works with.
"""

import itertools
import math
from fractions import Fraction
from typing import Generator, Iterable, Iterator, Tuple

from .exceptions import ParseError


def rational_quotients(p: int, q: int) -> Tuple[int, ...]:
    """Euclid's algorithm: p/q = [a_0; a_1, ..., a_k] with a_k > 1 unless p/q is an integer."""
    if q <= 0:
        raise ParseError(f"Denominator must be positive, got {q}")
    quotients = []
    while q:
        a, r = divmod(p, q)
        quotients.append(a)
        p, q = q, r
    return tuple(quotients)


def sqrt_quotients(d: int) -> Generator[int, None, None]:
    """The periodic expansion of sqrt(d) for a positive non-square d."""
    root = math.isqrt(d)
    if d <= 0 or root * root == d:
        raise ParseError(f"sqrt({d}) is not an irrational quadratic surd")
    m, den, a = 0, 1, root
    yield a
    while True:
        m = den * a - m
        den = (d - m * m) // den
        a = (root + m) // den
        yield a


def golden_quotients() -> Iterator[int]:
    """[1; 1, 1, ...]"""
    return itertools.repeat(1)


def convergents(quotients: Iterable[int]) -> Generator[Tuple[int, int], None, None]:
    """Successive convergents p_k / q_k from the continuant recursion."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for a in quotients:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def lower_convergents(quotients: Iterable[int]) -> Generator[Tuple[Fraction, bool], None, None]:
    """
    Convergents that lie below the expanded number, in increasing order.

    Even-indexed convergents approach from below. For a finite stream the
    value itself closes the sequence. Each item is (ratio, is_terminal).
    """
    previous = None
    for index, (p, q) in enumerate(convergents(quotients)):
        if previous is not None and previous[0] % 2 == 0:
            yield previous[1], False
        previous = (index, Fraction(p, q))
    if previous is not None:
        yield previous[1], True


def stream_value(quotients: Iterable[int], depth: int) -> Fraction:
    """The convergent of index depth - 1."""
    value = None
    for value in itertools.islice(convergents(quotients), depth):
        pass
    if value is None:
        raise ParseError("Empty continued fraction")
    return Fraction(*value)
