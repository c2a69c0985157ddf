"""
Monomial valuations v_w(sum a_α z^α) = min{<w, α> : a_α != 0}.

Valuation ideals, Z-divisor coefficients along toric rays, the limit
b-divisor D_ξ, multiplier ideals and log-canonical thresholds of monomial
ideals, and the jump of D_ξ at the boundary of the weight orthant.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

from .conf import iteration_cap
from .exceptions import InvalidIdealError, InvalidWeightsError, IterationCapExceeded
from .polyhedra import Facet, MonomialIdeal, interior_ideal
from .rational import INF, ceil_fraction, format_weights, is_inf, lcm_all, parse_weights, primitive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightVector:
    """
    Weights w_1..w_c of a monomial valuation.

    Entries are nonnegative rationals or INF. INF marks a seminorm with a
    kernel; zeros are only meaningful at the boundary of the orthant.
    """

    entries: Tuple

    def __post_init__(self):
        entries = tuple(e if is_inf(e) else Fraction(e) for e in self.entries)
        if not entries:
            raise InvalidWeightsError("A weight vector needs at least one entry")
        if any(not is_inf(e) and e < 0 for e in entries):
            raise InvalidWeightsError(f"Negative weight in {entries}")
        if all(is_inf(e) for e in entries):
            raise InvalidWeightsError("All weights infinite")
        if all(e == 0 for e in entries):
            raise InvalidWeightsError("All weights zero: the trivial valuation")
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def parse(cls, text: str) -> 'WeightVector':
        return cls(parse_weights(text))

    @classmethod
    def coerce(cls, w) -> 'WeightVector':
        return w if isinstance(w, WeightVector) else cls(tuple(w))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def c(self) -> int:
        return len(self.entries)

    def is_finite(self) -> bool:
        return not any(is_inf(e) for e in self.entries)

    def is_interior(self) -> bool:
        """All entries finite and strictly positive."""
        return self.is_finite() and all(e > 0 for e in self.entries)

    def zero_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.entries) if e == 0)

    def scaled(self, factor) -> 'WeightVector':
        factor = Fraction(factor)
        return WeightVector(tuple(e if is_inf(e) else factor * e for e in self.entries))

    def require_interior(self):
        if not self.is_interior():
            raise InvalidWeightsError(f"Expected finite positive weights, got {self}")

    def __str__(self) -> str:
        return format_weights(self.entries)


def _check_ray(u: Sequence[int], c: int) -> Tuple[int, ...]:
    u = tuple(int(x) for x in u)
    if len(u) != c:
        raise InvalidWeightsError(f"Ray {u} does not have {c} entries")
    if any(x < 0 for x in u) or not any(u):
        raise InvalidWeightsError(f"Ray {u} must be nonzero with nonnegative entries")
    if primitive(u) != u:
        raise InvalidWeightsError(f"Ray {u} is not primitive")
    return u


def monomial_value(w, support: Iterable[Sequence[int]]):
    """
    min over the support of <w, α>, where INF * 0 = 0.

    Returns INF when every term meets an infinite weight positively.
    """
    w = WeightVector.coerce(w)
    support = [tuple(alpha) for alpha in support]
    if not support:
        raise InvalidIdealError("The zero function has no value")
    best = INF
    for alpha in support:
        if len(alpha) != w.c:
            raise InvalidWeightsError(f"Exponent {alpha} does not match {w.c} weights")
        if any(is_inf(wi) and a > 0 for wi, a in zip(w, alpha)):
            continue
        value = sum((wi * a for wi, a in zip(w, alpha) if a > 0), Fraction(0))
        if is_inf(best) or value < best:
            best = value
    return best


def valuation_ideal(w, m) -> MonomialIdeal:
    """
    Minimal generators of {z^α : <w, α> >= m}.

    A minimal generator has α_i <= ⌈m / w_i⌉, so the first c - 1
    coordinates are enumerated in that box and the last one is the least
    value reaching m.
    """
    w = WeightVector.coerce(w)
    w.require_interior()
    m = Fraction(m)
    c = w.c
    if m <= 0:
        return MonomialIdeal.unit(c)
    bounds = [ceil_fraction(m / w[i]) for i in range(c - 1)]
    gens = []
    for head in itertools.product(*(range(b + 1) for b in bounds)):
        reached = sum((w[i] * head[i] for i in range(c - 1)), Fraction(0))
        last = max(0, ceil_fraction((m - reached) / w[c - 1]))
        gens.append(tuple(head) + (last,))
    return MonomialIdeal.of(gens, c=c)


def z_divisor_coefficient(a: MonomialIdeal, u: Sequence[int]) -> Fraction:
    """ord_P(Z(a)) = -min over generators of <u, g> for the divisor P of the ray u."""
    u = _check_ray(u, a.c)
    return Fraction(-min(sum(x * y for x, y in zip(u, g)) for g in a.gens))


def dxi_coefficient(w, u: Sequence[int]) -> Fraction:
    """
    ord_P(D_ξ) = -min_i u_i / w_i for the monomial valuation of weights w.

    A weight vector with an infinite entry is a seminorm with a kernel and
    its D_ξ vanishes.
    """
    w = WeightVector.coerce(w)
    u = _check_ray(u, w.c)
    if not w.is_finite():
        return Fraction(0)
    if any(e == 0 for e in w):
        raise InvalidWeightsError(f"Zero weight in {w}: use the boundary formulas")
    return -min(Fraction(ui) / wi for ui, wi in zip(u, w))


def dxi_boundary_coefficient(w, u: Sequence[int]) -> Fraction:
    """ord_P(D_ξ) at a boundary weight: -min over i with w_i != 0 of u_i / w_i."""
    w = WeightVector.coerce(w)
    u = _check_ray(u, w.c)
    if not w.is_finite():
        return Fraction(0)
    return -min(Fraction(ui) / wi for ui, wi in zip(u, w) if wi != 0)


def dxi_limit_from_interior(w, u: Sequence[int]) -> Fraction:
    """
    Limit of dxi_coefficient as the zero weights of w tend to 0 from above.

    Terms u_i / w_i with u_i > 0 blow up and drop out of the minimum; a zero
    weight with u_i = 0 pins the minimum at 0.
    """
    w = WeightVector.coerce(w)
    u = _check_ray(u, w.c)
    zeros = w.zero_indices()
    if any(u[i] == 0 for i in zeros):
        return Fraction(0)
    return -min(Fraction(u[i]) / w[i] for i in range(w.c) if i not in zeros)


class BoundaryJump(NamedTuple):
    limit_from_interior: Fraction
    value_at_boundary: Fraction


def boundary_jump(w, u: Optional[Sequence[int]] = None) -> BoundaryJump:
    """
    Interior limit and boundary value of the D_ξ coefficient at a ray.

    The default ray is the sum of e_i over the nonzero weights, the divisor
    of the blowup along the coordinate subspace where the boundary valuation
    is centered.
    """
    w = WeightVector.coerce(w)
    if not w.is_finite():
        raise InvalidWeightsError("Boundary analysis needs finite weights")
    zeros = w.zero_indices()
    if not zeros or len(zeros) == w.c:
        raise InvalidWeightsError(f"Expected a proper nonempty set of zero weights in {w}")
    if u is None:
        u = tuple(0 if i in zeros else 1 for i in range(w.c))
    jump = BoundaryJump(dxi_limit_from_interior(w, u), dxi_boundary_coefficient(w, u))
    if jump.value_at_boundary > jump.limit_from_interior:
        raise AssertionError(f"Lower semicontinuity fails at {w}, ray {u}: {jump}")
    return jump


def multiplier_ideal(a: MonomialIdeal, c_exp) -> MonomialIdeal:
    """
    J(a^c) for a monomial ideal a.

    z^α is in J exactly when α + (1, ..., 1) lies in the interior of
    c · Newt(a).
    """
    c_exp = Fraction(c_exp)
    if c_exp <= 0:
        raise InvalidIdealError(f"Multiplier exponent must be positive, got {c_exp}")
    return interior_ideal(a.c, a.newton_polyhedron.facets, c_exp)


def lct(a: MonomialIdeal):
    """max{t : (1, ..., 1) in t · Newt(a)}; INF for the unit ideal."""
    if a.is_unit():
        return INF
    ratios = [
        Fraction(sum(f.normal), f.offset)
        for f in a.newton_polyhedron.facets if f.offset > 0
    ]
    return min(ratios)


def arnold(a: MonomialIdeal) -> Fraction:
    """Arnold multiplicity 1 / lct; zero for the unit ideal."""
    threshold = lct(a)
    if is_inf(threshold):
        return Fraction(0)
    return 1 / threshold


def log_discrepancy(w) -> Fraction:
    """A(v_w) = sum of the weights."""
    w = WeightVector.coerce(w)
    w.require_interior()
    return sum(w.entries, Fraction(0))


def arnold_of_filtration(w) -> Fraction:
    """inf over m of Arn(a_m) / m for the valuation ideals of v_w, which is 1 / A(v_w)."""
    return 1 / log_discrepancy(w)


def arnold_sequence(w, ms: Iterable) -> Tuple[Fraction, ...]:
    """Arn(a_m) / m for each m."""
    return tuple(arnold(valuation_ideal(w, m)) / Fraction(m) for m in ms)


def _weight_facet(w: WeightVector, m: Fraction) -> Facet:
    normal = primitive(w.entries)
    ratio = Fraction(normal[0]) / w[0]
    return Facet(normal, m * ratio)


def stabilizing_multiplier(w, m) -> int:
    """A p with Newt(a_{pm}) = {<w, x> >= pm}: lcm of t · n_i for m = s/t, w_i = n_i/d_i."""
    w = WeightVector.coerce(w)
    m = Fraction(m)
    return lcm_all(m.denominator * wi.numerator for wi in w)


class AsymptoticMultiplierIdeal(NamedTuple):
    ideal: MonomialIdeal
    stabilized_at: int


def asymptotic_multiplier_ideal(w, m, cap: int = None) -> AsymptoticMultiplierIdeal:
    """
    J(a_•^m) = J(a_{pm}^{1/p}) for p large enough.

    Along divisors of the stabilizing multiplier p* these ideals increase
    and reach {α : <w, α + 1> > m} at p*. The least divisor where this
    happens is recorded.
    """
    w = WeightVector.coerce(w)
    w.require_interior()
    m = Fraction(m)
    if m <= 0:
        return AsymptoticMultiplierIdeal(MonomialIdeal.unit(w.c), 1)
    target = interior_ideal(w.c, [_weight_facet(w, m)], 1)
    top = stabilizing_multiplier(w, m)
    limit = cap if cap is not None else iteration_cap(top)
    divisors = [p for p in range(1, top + 1) if top % p == 0]
    for tried, p in enumerate(divisors):
        if tried >= limit:
            raise IterationCapExceeded(
                f"Multiplier ideal of {w} at m={m} not stable after {limit} multipliers"
            )
        candidate = multiplier_ideal(valuation_ideal(w, p * m), Fraction(1, p))
        if candidate == target:
            logger.debug(f"Asymptotic multiplier ideal of {w} at m={m} stable at p={p}")
            return AsymptoticMultiplierIdeal(candidate, p)
    raise AssertionError(f"Multiplier ideals of {w} at m={m} never reached the limit")


def asymptotic_multiplier_divisor(w, m, u: Sequence[int]) -> Fraction:
    """ord_P of Z(J(a_•^m)) at the ray u."""
    return z_divisor_coefficient(asymptotic_multiplier_ideal(w, m).ideal, u)
