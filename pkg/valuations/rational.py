"""
Exact rational numbers: parsing, canonical "p/q" formatting and the INF
sentinel used for seminorm kernels and unconstrained thresholds.
"""

import math
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

from .exceptions import ParseError

# Only ever compared against, never multiplied into a result.
INF = math.inf

Rational = Fraction
Extended = Union[Fraction, float]


def is_inf(value) -> bool:
    return value == INF


def parse_rational(text: str) -> Fraction:
    """
    Parse "p/q", "p" or "inf" into an exact rational (or INF).

    Decimal strings are rejected: every quantity is exact.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    raw = str(text).strip()
    if raw.lower() in ('inf', 'infinity', '+inf', 'oo'):
        return INF
    if not raw or any(ch in raw for ch in '.eE'):
        raise ParseError(f"Not an exact rational: '{text}'")
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Not an exact rational: '{text}' ({e})")
    return value


def format_rational(value) -> str:
    """Canonical external form: "p/q" with q > 0 and gcd(p, q) = 1."""
    if is_inf(value):
        return 'inf'
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_weights(text: str) -> Tuple[Fraction, ...]:
    """Comma-separated rationals, e.g. "2/1,3/1" or "1,inf"."""
    parts = [part for part in str(text).split(',')]
    if not parts or any(not part.strip() for part in parts):
        raise ParseError(f"Malformed weight list: '{text}'")
    return tuple(parse_rational(part) for part in parts)


def format_weights(weights: Iterable) -> str:
    return ','.join(format_rational(w) for w in weights)


def ceil_fraction(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


def floor_fraction(value: Fraction) -> int:
    return value.numerator // value.denominator


def lcm_all(values: Iterable[int]) -> int:
    result = 1
    for value in values:
        result = math.lcm(result, int(value))
    return result


def primitive(vector: Iterable) -> Tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector that is integral and primitive."""
    entries: List[Fraction] = [Fraction(x) for x in vector]
    scale = lcm_all(x.denominator for x in entries)
    ints = [int(x * scale) for x in entries]
    divisor = 0
    for x in ints:
        divisor = math.gcd(divisor, x)
    if divisor == 0:
        raise ParseError("The zero vector has no primitive representative")
    return tuple(x // divisor for x in ints)
