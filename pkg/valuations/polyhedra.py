"""
Monomial ideals and their Newton polyhedra.

A monomial ideal is stored by its minimal generators, an antichain of
exponent vectors. The Newton polyhedron conv(gens) + R^c_{>=0} is described
by facet inequalities <u, x> >= b with primitive normals u >= 0.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

from . import linalg
from .conf import get_setting
from .exceptions import DimensionNotSupportedError, InvalidIdealError
from .rational import INF, floor_fraction, primitive

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def divides(g: Sequence[int], alpha: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(alpha, g))


def minimalize(vectors: Iterable[Sequence[int]]) -> Tuple[Exponent, ...]:
    """The minimal elements of a set of exponents under componentwise order."""
    candidates = sorted({tuple(int(x) for x in v) for v in vectors}, key=lambda v: (sum(v), v))
    kept: List[Exponent] = []
    for v in candidates:
        if not any(divides(g, v) for g in kept):
            kept.append(v)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    """A nonzero monomial ideal in c variables, held by its minimal generators."""

    c: int
    gens: Tuple[Exponent, ...]

    def __post_init__(self):
        if self.c < 1:
            raise InvalidIdealError(f"Variable count must be positive, got {self.c}")
        if not self.gens:
            raise InvalidIdealError("The zero ideal has no generators")
        for g in self.gens:
            if len(g) != self.c:
                raise InvalidIdealError(f"Exponent {g} does not have {self.c} entries")
            if any(int(x) != x or x < 0 for x in g):
                raise InvalidIdealError(f"Exponent {g} is not a vector of natural numbers")
        object.__setattr__(self, 'gens', minimalize(self.gens))

    @classmethod
    def of(cls, gens: Iterable[Sequence[int]], c: int = None) -> 'MonomialIdeal':
        gens = [tuple(g) for g in gens]
        if c is None:
            if not gens:
                raise InvalidIdealError("The zero ideal has no generators")
            c = len(gens[0])
        return cls(c, tuple(gens))

    @classmethod
    def unit(cls, c: int) -> 'MonomialIdeal':
        return cls(c, ((0,) * c,))

    @classmethod
    def maximal(cls, c: int) -> 'MonomialIdeal':
        return cls(c, tuple(tuple(int(i == j) for j in range(c)) for i in range(c)))

    def contains(self, alpha: Sequence[int]) -> bool:
        return any(divides(g, alpha) for g in self.gens)

    def __contains__(self, alpha) -> bool:
        return self.contains(alpha)

    def is_unit(self) -> bool:
        return self.contains((0,) * self.c)

    def is_proper(self) -> bool:
        return not self.is_unit()

    def is_subideal(self, other: 'MonomialIdeal') -> bool:
        """True when self is contained in other."""
        return all(other.contains(g) for g in self.gens)

    def __mul__(self, other: 'MonomialIdeal') -> 'MonomialIdeal':
        if self.c != other.c:
            raise InvalidIdealError("Ideals live in different polynomial rings")
        return MonomialIdeal(
            self.c,
            tuple(tuple(a + b for a, b in zip(g, h)) for g in self.gens for h in other.gens),
        )

    def power(self, k: int) -> 'MonomialIdeal':
        if k < 0:
            raise InvalidIdealError(f"Negative ideal power {k}")
        result = MonomialIdeal.unit(self.c)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def pure_power_degrees(self) -> Tuple:
        """Least k with z_i^k in the ideal, or INF."""
        degrees = []
        for i in range(self.c):
            axis = [g[i] for g in self.gens if all(g[j] == 0 for j in range(self.c) if j != i)]
            degrees.append(min(axis) if axis else INF)
        return tuple(degrees)

    def colength(self):
        """Number of standard monomials; INF unless the ideal is primary to the origin."""
        bounds = self.pure_power_degrees()
        if any(b == INF for b in bounds):
            return INF
        if self.c == 2:
            # Staircase: each generator covers the columns up to the next one.
            steps = sorted(self.gens)
            return sum(
                (nxt[0] - g[0]) * g[1] for g, nxt in zip(steps, steps[1:])
            )
        return sum(
            1 for alpha in itertools.product(*(range(b) for b in bounds))
            if not self.contains(alpha)
        )

    @cached_property
    def newton_polyhedron(self) -> 'NewtonPolyhedron':
        return NewtonPolyhedron.of(self)

    def to_json(self) -> List[List[int]]:
        return [list(g) for g in self.gens]


@dataclass(frozen=True)
class Facet:
    """The inequality <normal, x> >= offset."""

    normal: Tuple[int, ...]
    offset: int

    def value(self, point: Sequence) -> Fraction:
        return sum((Fraction(u) * Fraction(x) for u, x in zip(self.normal, point)), Fraction(0))


def _cross(a: Sequence[int], b: Sequence[int]) -> Tuple[int, int, int]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _lower_chain(points: Sequence[Exponent]) -> List[Exponent]:
    """Vertices of the Newton polygon of a staircase, left to right."""
    chain: List[Exponent] = []
    for p in sorted(points):
        while len(chain) > 1:
            v0, v1 = chain[-2], chain[-1]
            turn = (v1[0] - v0[0]) * (p[1] - v0[1]) - (p[0] - v0[0]) * (v1[1] - v0[1])
            if turn <= 0:
                chain.pop()
            else:
                break
        chain.append(p)
    return chain


def _facets_2d(gens: Sequence[Exponent]) -> List[Facet]:
    chain = _lower_chain(gens)
    facets = [Facet((1, 0), chain[0][0]), Facet((0, 1), chain[-1][1])]
    for p, q in zip(chain, chain[1:]):
        normal = primitive((p[1] - q[1], q[0] - p[0]))
        facets.append(Facet(normal, normal[0] * p[0] + normal[1] * p[1]))
    return facets


def _facets_3d(gens: Sequence[Exponent]) -> List[Facet]:
    units = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    candidates = set(units)
    for g, h in itertools.combinations(gens, 2):
        diff = tuple(b - a for a, b in zip(g, h))
        for e in units:
            candidates.add(_cross(diff, e))
    for g, h, k in itertools.combinations(gens, 3):
        candidates.add(_cross(
            tuple(b - a for a, b in zip(g, h)),
            tuple(b - a for a, b in zip(g, k)),
        ))

    normals = set()
    for n in candidates:
        if all(x <= 0 for x in n):
            n = tuple(-x for x in n)
        if any(x < 0 for x in n) or not any(n):
            continue
        normals.add(primitive(n))

    facets = []
    for n in sorted(normals):
        offset = min(sum(a * b for a, b in zip(n, g)) for g in gens)
        tight = [g for g in gens if sum(a * b for a, b in zip(n, g)) == offset]
        spanning = [tuple(b - a for a, b in zip(tight[0], g)) for g in tight[1:]]
        spanning += [e for i, e in enumerate(units) if n[i] == 0]
        if linalg.rank(spanning) == 2:
            facets.append(Facet(n, offset))
    return facets


@dataclass(frozen=True)
class NewtonPolyhedron:
    """conv(gens) + R^c_{>=0} together with its facet inequalities."""

    c: int
    generators: Tuple[Exponent, ...]
    facets: Tuple[Facet, ...]

    @classmethod
    def of(cls, ideal: MonomialIdeal) -> 'NewtonPolyhedron':
        c = ideal.c
        max_dim = get_setting('VALCALC_MAX_MULTIPLIER_DIM')
        if c > max_dim:
            raise DimensionNotSupportedError(
                f"Newton polyhedra are computed in at most {max_dim} variables, got {c}"
            )
        if c == 1:
            facets = [Facet((1,), ideal.gens[0][0])]
        elif c == 2:
            facets = _facets_2d(ideal.gens)
        elif c == 3:
            facets = _facets_3d(ideal.gens)
        else:
            raise DimensionNotSupportedError(f"No hull routine for {c} variables")
        logger.debug(f"Newton polyhedron of {len(ideal.gens)} generators has {len(facets)} facets")
        return cls(c, ideal.gens, tuple(facets))

    def contains(self, point: Sequence, scale=1) -> bool:
        """point in scale * Newt."""
        scale = Fraction(scale)
        return all(f.value(point) >= scale * f.offset for f in self.facets)

    def in_interior(self, point: Sequence, scale=1) -> bool:
        """point in the interior of scale * Newt."""
        scale = Fraction(scale)
        return all(f.value(point) > scale * f.offset for f in self.facets)

    @property
    def vertices(self) -> Tuple[Exponent, ...]:
        """Generators lying on at least c facets with independent normals."""
        result = []
        for g in self.generators:
            normals = [f.normal for f in self.facets if f.value(g) == f.offset]
            if normals and linalg.rank(normals) == self.c:
                result.append(g)
        return tuple(result)


def interior_ideal(c: int, inequalities: Sequence[Facet], scale) -> MonomialIdeal:
    """
    The monomial ideal {z^α : <u, α + 1> > scale · b for every (u, b)}.

    Each minimal generator has α_i <= scale · b / u_i for some inequality
    with u_i > 0, which bounds the search box; the last coordinate is solved
    for directly.
    """
    scale = Fraction(scale)
    bounds = []
    for i in range(c - 1):
        limits = [scale * f.offset / f.normal[i] for f in inequalities if f.normal[i] > 0]
        bounds.append(max(0, floor_fraction(max(limits))) if limits else 0)

    gens = []
    for head in itertools.product(*(range(b + 1) for b in bounds)):
        lowest = 0
        feasible = True
        for f in inequalities:
            rhs = scale * f.offset - sum(
                (f.normal[j] * (head[j] + 1) for j in range(c - 1)), 0
            )
            last = f.normal[c - 1]
            if last > 0:
                lowest = max(lowest, floor_fraction(Fraction(rhs) / last))
            elif rhs >= 0:
                feasible = False
                break
        if feasible:
            gens.append(tuple(head) + (lowest,))
    return MonomialIdeal.of(gens, c=c)
