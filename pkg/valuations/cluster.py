"""
Clusters of infinitely near points on a smooth surface.

A cluster is the sequence of centers p_1, ..., p_n of a sequence of point
blowups, together with the proximity relation. Exceptional divisors over a
cluster are handled in two bases: total transforms Ē_i (where the
intersection form is minus the identity) and strict transforms Ẽ_i.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .conf import get_setting, iteration_cap
from .exceptions import (
    BasisMismatchError,
    InvalidClusterError,
    IterationCapExceeded,
    RealizabilityError,
)
from .rational import ceil_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cluster:
    """
    Proximity data of n infinitely near points, 1-based.

    ``proximities[i - 1]`` is the set of indices j < i such that p_i is
    proximate to p_j. Every p_i with i >= 2 is proximate to p_{i-1} and to at
    most one further point, which must itself be a point p_{i-1} is
    proximate to (p_i then lies on the intersection of E_{i-1} with that
    strict transform).
    """

    proximities: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        n = len(self.proximities)
        if n == 0:
            raise InvalidClusterError("A cluster needs at least one point")
        if self.proximities[0]:
            raise InvalidClusterError("The first point cannot be proximate to anything")
        for i in range(2, n + 1):
            prox = self.proximities[i - 1]
            if (i - 1) not in prox:
                raise InvalidClusterError(f"p_{i} must be proximate to p_{i - 1}")
            if len(prox) > 2:
                raise InvalidClusterError(f"p_{i} is proximate to more than two points")
            others = prox - {i - 1}
            for j in others:
                if not 1 <= j < i - 1:
                    raise InvalidClusterError(f"p_{i} cannot be proximate to p_{j}")
                if j not in self.proximities[i - 2]:
                    raise InvalidClusterError(
                        f"p_{i} proximate to p_{j} requires p_{i - 1} proximate to p_{j}"
                    )

    @classmethod
    def from_lists(cls, lists: Iterable[Iterable[int]]) -> 'Cluster':
        try:
            return cls(tuple(frozenset(int(j) for j in entry) for entry in lists))
        except (TypeError, ValueError) as e:
            if isinstance(e, InvalidClusterError):
                raise
            raise InvalidClusterError(f"Malformed proximity lists: {e}")

    @classmethod
    def chain(cls, n: int) -> 'Cluster':
        """n free points, each on the last exceptional divisor."""
        return cls.from_lists([[]] + [[i - 1] for i in range(2, n + 1)])

    @property
    def n(self) -> int:
        return len(self.proximities)

    def proximate_to(self, i: int) -> FrozenSet[int]:
        """Indices j such that p_i is proximate to p_j."""
        self._check_index(i)
        return self.proximities[i - 1]

    def points_proximate_to(self, j: int, upto: int = None) -> Tuple[int, ...]:
        """Indices i (at most ``upto``) such that p_i is proximate to p_j."""
        self._check_index(j)
        last = self.n if upto is None else upto
        return tuple(i for i in range(j + 1, last + 1) if j in self.proximities[i - 1])

    def is_satellite(self, i: int) -> bool:
        return len(self.proximate_to(i)) == 2

    def is_free(self, i: int) -> bool:
        return not self.is_satellite(i)

    def truncate(self, k: int) -> 'Cluster':
        self._check_index(k)
        return Cluster(self.proximities[:k])

    def to_lists(self) -> List[List[int]]:
        return [sorted(prox, reverse=True) for prox in self.proximities]

    def _check_index(self, i: int):
        if not 1 <= i <= self.n:
            raise InvalidClusterError(f"Point index {i} out of range 1..{self.n}")

    @cached_property
    def values_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """
        V[j][i] = ord_{E_j}(Ē_i), 0-based rows and columns.

        Row j is the value vector of ord_{E_j} on p_1..p_j, padded with zeros.
        """
        rows = []
        for j in range(1, self.n + 1):
            values = values_of_divisorial(self, j, Fraction(1))
            rows.append(tuple(int(x) for x in values) + (0,) * (self.n - j))
        return tuple(rows)

    @cached_property
    def intersection_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """Ẽ_i · Ẽ_j, 0-based."""
        n = self.n
        strict = [ExceptionalDivisor.prime(self, i).total_coords for i in range(1, n + 1)]
        return tuple(
            tuple(int(-sum(a * b for a, b in zip(strict[i], strict[j]))) for j in range(n))
            for i in range(n)
        )


def values_of_divisorial(cluster: Cluster, n_index: int, normalization) -> Tuple[Fraction, ...]:
    """
    Values v_i = v(E_i) of the divisorial valuation of E_{n_index}.

    v_{n_index} is the normalization; earlier values follow from the
    proximity equalities v_j = sum of v_i over the p_i proximate to p_j.
    """
    cluster._check_index(n_index)
    normalization = Fraction(normalization)
    if normalization <= 0:
        raise ValueError(f"Normalization must be positive, got {normalization}")
    values = [Fraction(0)] * n_index
    values[n_index - 1] = normalization
    for j in range(n_index - 1, 0, -1):
        values[j - 1] = sum(
            (values[i - 1] for i in cluster.points_proximate_to(j, upto=n_index)),
            Fraction(0),
        )
    return tuple(values)


class Basis(str, Enum):
    TOTAL_TRANSFORM = 'total'
    PRIME = 'prime'


@dataclass(frozen=True)
class ExceptionalDivisor:
    """A rational combination of exceptional divisors over a cluster."""

    cluster: Cluster
    basis: Basis
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.cluster.n:
            raise ValueError(
                f"Expected {self.cluster.n} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, 'coeffs', tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, 'basis', Basis(self.basis))

    @classmethod
    def zero(cls, cluster: Cluster, basis: Basis = Basis.PRIME) -> 'ExceptionalDivisor':
        return cls(cluster, basis, (Fraction(0),) * cluster.n)

    @classmethod
    def total(cls, cluster: Cluster, i: int) -> 'ExceptionalDivisor':
        """The total transform Ē_i."""
        return cls._unit(cluster, Basis.TOTAL_TRANSFORM, i)

    @classmethod
    def prime(cls, cluster: Cluster, i: int) -> 'ExceptionalDivisor':
        """The strict transform Ẽ_i."""
        return cls._unit(cluster, Basis.PRIME, i)

    @classmethod
    def _unit(cls, cluster, basis, i):
        cluster._check_index(i)
        coeffs = [Fraction(0)] * cluster.n
        coeffs[i - 1] = Fraction(1)
        return cls(cluster, basis, tuple(coeffs))

    @cached_property
    def total_coords(self) -> Tuple[Fraction, ...]:
        return self.in_basis(Basis.TOTAL_TRANSFORM).coeffs

    @cached_property
    def prime_coords(self) -> Tuple[Fraction, ...]:
        return self.in_basis(Basis.PRIME).coeffs

    def in_basis(self, target: Basis) -> 'ExceptionalDivisor':
        return basis_convert(self, target)

    def _check_same_cluster(self, other: 'ExceptionalDivisor'):
        if self.cluster != other.cluster:
            raise BasisMismatchError("Divisors live on different clusters")

    def __add__(self, other: 'ExceptionalDivisor') -> 'ExceptionalDivisor':
        self._check_same_cluster(other)
        theirs = other.in_basis(self.basis).coeffs
        return ExceptionalDivisor(
            self.cluster, self.basis, tuple(a + b for a, b in zip(self.coeffs, theirs))
        )

    def __neg__(self) -> 'ExceptionalDivisor':
        return self.scale(-1)

    def __sub__(self, other: 'ExceptionalDivisor') -> 'ExceptionalDivisor':
        return self + (-other)

    def scale(self, factor) -> 'ExceptionalDivisor':
        factor = Fraction(factor)
        return ExceptionalDivisor(self.cluster, self.basis, tuple(factor * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.prime_coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.prime_coords)

    def is_antinef(self) -> bool:
        return all(excess <= 0 for excess in strict_excesses(self))

    def dominated_by(self, other: 'ExceptionalDivisor') -> bool:
        """self <= other coefficientwise in the prime basis."""
        self._check_same_cluster(other)
        return all(a <= b for a, b in zip(self.prime_coords, other.prime_coords))

    def __str__(self) -> str:
        symbol = 'Ē' if self.basis == Basis.TOTAL_TRANSFORM else 'Ẽ'
        terms = [f"({c}){symbol}_{i}" for i, c in enumerate(self.coeffs, start=1) if c != 0]
        return ' + '.join(terms) if terms else '0'


def basis_convert(d: ExceptionalDivisor, target: Basis) -> ExceptionalDivisor:
    """
    Express d in the target basis.

    Ẽ_i = Ē_i - sum of Ē_k over the p_k proximate to p_i, and conversely
    Ē_i = sum over j of ord_{E_j}(Ē_i) Ẽ_j.
    """
    target = Basis(target)
    if d.basis == target:
        return d
    cluster = d.cluster
    n = cluster.n
    if target == Basis.TOTAL_TRANSFORM:
        prime = d.coeffs
        total = [
            prime[k - 1] - sum((prime[i - 1] for i in cluster.proximate_to(k)), Fraction(0))
            for k in range(1, n + 1)
        ]
        return ExceptionalDivisor(cluster, target, tuple(total))
    values = cluster.values_matrix
    total = d.coeffs
    prime = [sum((values[j][i] * total[i] for i in range(n)), Fraction(0)) for j in range(n)]
    return ExceptionalDivisor(cluster, target, tuple(prime))


def intersect(a: ExceptionalDivisor, b: ExceptionalDivisor) -> Fraction:
    """Bilinear extension of Ē_i · Ē_j = -δ_ij."""
    a._check_same_cluster(b)
    return -sum((x * y for x, y in zip(a.total_coords, b.total_coords)), Fraction(0))


def strict_excesses(d: ExceptionalDivisor) -> Tuple[Fraction, ...]:
    """
    d · Ẽ_i for every i; d is antinef exactly when all are <= 0.

    In total-transform coordinates ρ this is -ρ_i + sum of ρ_k over the p_k
    proximate to p_i.
    """
    rho = d.total_coords
    cluster = d.cluster
    return tuple(
        -rho[i - 1] + sum((rho[k - 1] for k in cluster.points_proximate_to(i)), Fraction(0))
        for i in range(1, cluster.n + 1)
    )


def _excesses_from_prime(cluster: Cluster, prime: Sequence[Fraction]) -> List[Fraction]:
    matrix = cluster.intersection_matrix
    n = cluster.n
    return [sum((matrix[i][j] * prime[j] for j in range(n)), Fraction(0)) for i in range(n)]


def _settle_active_set(cluster: Cluster, prime: List[Fraction]) -> List[Fraction]:
    """
    Finish an envelope computation exactly.

    Starting from a point below the envelope, the indices with positive
    excess are made tight by solving the restricted intersection system with
    the other coefficients held fixed; the tight set only grows, so at most
    n solves are needed.
    """
    matrix = cluster.intersection_matrix
    n = cluster.n
    active: set = set()
    current = list(prime)
    while True:
        excess = _excesses_from_prime(cluster, current)
        newly = {i for i in range(n) if excess[i] > 0}
        if not newly:
            return current
        active |= newly
        order = sorted(active)
        rows = [[matrix[i][j] for j in order] for i in order]
        rhs = [
            -sum((matrix[i][j] * current[j] for j in range(n) if j not in active), Fraction(0))
            for i in order
        ]
        for index, value in zip(order, linalg.solve(rows, rhs)):
            current[index] = value
        logger.debug(f"Settled active set {[i + 1 for i in order]}")


def _unload(
    cluster: Cluster, current: List[Fraction], limit: int, integral: bool
) -> Optional[List[Fraction]]:
    """Laufer steps from a point below the envelope; None if the cap is hit."""
    matrix = cluster.intersection_matrix
    for step in range(limit):
        excess = _excesses_from_prime(cluster, current)
        positive = [i for i in range(cluster.n) if excess[i] > 0]
        if not positive:
            logger.debug(f"Unloading converged after {step} steps")
            return current
        i = positive[0]
        raise_by = excess[i] / -matrix[i][i]
        if integral:
            raise_by = Fraction(ceil_fraction(raise_by))
        current[i] += raise_by
    return None


def antinef_closure(
    d: ExceptionalDivisor, integral: bool = False, cap: int = None
) -> ExceptionalDivisor:
    """
    The least antinef divisor that dominates d in the prime basis.

    Unloading: while some Ẽ_i meets the divisor positively, raise its
    coefficient by (d · Ẽ_i) / (-Ẽ_i²). Every step stays below the envelope.
    When the step cap is reached the remaining work is done by an exact
    active-set solve. With ``integral=True`` the least integral antinef
    divisor is returned, unloading by rounded-up steps; if that hits the cap
    it restarts from the rounded-up rational envelope.
    """
    cluster = d.cluster
    n = cluster.n
    factor = get_setting('VALCALC_UNLOADING_CAP_FACTOR')
    limit = cap if cap is not None else iteration_cap(factor * n * n)

    if integral:
        start = [Fraction(ceil_fraction(c)) for c in d.prime_coords]
        result = _unload(cluster, start, limit, integral=True)
        if result is None:
            rational = antinef_closure(d, integral=False, cap=cap)
            logger.info(f"Integral unloading restarted from the rational envelope on {n} points")
            start = [Fraction(ceil_fraction(c)) for c in rational.prime_coords]
            result = _unload(cluster, start, limit, integral=True)
        if result is None:
            raise IterationCapExceeded(f"Integral unloading did not finish in {limit} steps")
        return ExceptionalDivisor(cluster, Basis.PRIME, tuple(result)).in_basis(d.basis)

    current = list(d.prime_coords)
    result = _unload(cluster, current, limit, integral=False)
    if result is None:
        logger.info(f"Unloading hit its cap of {limit} steps on {n} points; solving the active set")
        result = _settle_active_set(cluster, current)
    return ExceptionalDivisor(cluster, Basis.PRIME, tuple(result)).in_basis(d.basis)


def check_proximity_inequalities(cluster: Cluster, mults: Sequence) -> None:
    """Raise unless m_i >= sum of m_k over the p_k proximate to p_i."""
    if len(mults) != cluster.n:
        raise RealizabilityError(f"Expected {cluster.n} multiplicities, got {len(mults)}")
    for i in range(1, cluster.n + 1):
        m_i = Fraction(mults[i - 1])
        if m_i < 0:
            raise RealizabilityError(f"Negative multiplicity at p_{i}")
        load = sum((Fraction(mults[k - 1]) for k in cluster.points_proximate_to(i)), Fraction(0))
        if m_i < load:
            raise RealizabilityError(
                f"Proximity inequality fails at p_{i}: {m_i} < {load}"
            )


def noether_value(values: Sequence, mults: Sequence) -> Fraction:
    """v(D) = sum of m_i v_i when the strict transform misses all later centers."""
    if len(values) != len(mults):
        raise ValueError(f"{len(values)} values but {len(mults)} multiplicities")
    return sum((Fraction(m) * Fraction(v) for m, v in zip(mults, values)), Fraction(0))
