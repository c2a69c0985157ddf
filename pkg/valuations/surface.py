"""
Divisorial and quasimonomial valuations on a smooth surface germ.

A divisorial valuation is determined by its cluster of centers and the
value of its last exceptional divisor. On the last blowup model the
b-divisor D_ξ and the Z-divisors of the valuation ideals are exceptional
divisors over the cluster, computed here in closed form or by unloading.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .cluster import (
    Basis,
    Cluster,
    ExceptionalDivisor,
    antinef_closure,
    check_proximity_inequalities,
    noether_value,
    values_of_divisorial,
)
from .continued import lower_convergents
from .exceptions import (
    InvalidIdealError,
    InvalidWeightsError,
    ParseError,
    RealizabilityError,
    StreamExhaustedError,
)
from .rational import ceil_fraction, primitive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurfaceValuation:
    """
    A divisorial valuation given by its cluster and values v_i = v(E_i).

    The values satisfy the proximity equalities v_j = sum of v_i over the
    p_i proximate to p_j, so they are fixed by the cluster and v_n.
    """

    cluster: Cluster
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        if len(values) != self.cluster.n:
            raise InvalidWeightsError(
                f"Expected {self.cluster.n} values, got {len(values)}"
            )
        if any(v <= 0 for v in values):
            raise InvalidWeightsError(f"Values must be positive: {values}")
        expected = values_of_divisorial(self.cluster, self.cluster.n, values[-1])
        if expected != values:
            raise InvalidWeightsError(
                f"Values {values} violate the proximity equalities (expected {expected})"
            )
        object.__setattr__(self, 'values', values)

    @classmethod
    def divisorial(cls, cluster: Cluster, normalization=1) -> 'SurfaceValuation':
        return cls(cluster, values_of_divisorial(cluster, cluster.n, normalization))

    @classmethod
    def from_weights(cls, w: Sequence) -> 'SurfaceValuation':
        """The monomial valuation of positive rational weights (w_1, w_2)."""
        return toric_cluster(w).valuation

    @property
    def n(self) -> int:
        return self.cluster.n

    @property
    def normalization(self) -> Fraction:
        return self.values[-1]

    @cached_property
    def norm_squared(self) -> Fraction:
        return sum((v * v for v in self.values), Fraction(0))


@dataclass(frozen=True)
class ToricCluster:
    """
    The centers of a monomial valuation in two variables.

    ``rays[i]`` is the primitive vector (ord_{E_i}(x), ord_{E_i}(y)).
    """

    weights: Tuple[Fraction, Fraction]
    cluster: Cluster
    rays: Tuple[Tuple[int, int], ...]
    valuation: SurfaceValuation


def toric_cluster(w: Sequence) -> ToricCluster:
    """
    Follow the center of v_w through point blowups.

    With integer weights (p, q), the center after blowing up lies on the
    chart where the smaller weight survives: if p < q the new weights are
    (p, q - p) and the x-axis of the chart is the new exceptional divisor.
    The next point is proximate to the new divisor and to the exceptional
    divisor, if any, still carried as the other axis. The process stops
    when p = q = 1.
    """
    if len(w) != 2:
        raise InvalidWeightsError(f"Toric clusters need two weights, got {len(w)}")
    weights = tuple(Fraction(x) for x in w)
    if any(x <= 0 for x in weights):
        raise InvalidWeightsError(f"Weights must be positive: {weights}")
    p, q = primitive(weights)
    scale = weights[0] / p

    # Labels are exceptional indices, or None for the coordinate axes.
    x_label: Optional[int] = None
    y_label: Optional[int] = None
    x_ray, y_ray = (1, 0), (0, 1)
    proximities: List[List[int]] = []
    rays: List[Tuple[int, int]] = []
    values: List[int] = []
    while True:
        index = len(rays) + 1
        values.append(min(p, q))
        rays.append((x_ray[0] + y_ray[0], x_ray[1] + y_ray[1]))
        proximities.append([label for label in (x_label, y_label) if label is not None])
        if p == q:
            break
        if p < q:
            q -= p
            x_label, x_ray = index, rays[-1]
        else:
            p -= q
            y_label, y_ray = index, rays[-1]

    cluster = Cluster.from_lists(proximities)
    valuation = SurfaceValuation(cluster, tuple(scale * v for v in values))
    return ToricCluster(weights, cluster, tuple(rays), valuation)


@dataclass(frozen=True)
class BDivisorTrace:
    """
    The trace of a b-divisor on the last blowup model of a valuation.

    ``integral`` marks Z-divisors of actual ideals; ``closed_form_agrees``
    records, for Z-divisors of valuation ideals, whether the closed form
    (m / v²) Σ v_i Ē_i gives the same divisor.
    """

    exceptional: ExceptionalDivisor
    base_component: Fraction = Fraction(0)
    integral: bool = False
    closed_form_agrees: Optional[bool] = None

    def coefficients(self, basis: Basis = Basis.TOTAL_TRANSFORM) -> Tuple[Fraction, ...]:
        return self.exceptional.in_basis(basis).coeffs

    def is_anti_effective(self) -> bool:
        return all(c <= 0 for c in self.exceptional.prime_coords)


def volume(v: SurfaceValuation) -> Fraction:
    """vol(v) = 1 / Σ v_i²."""
    return 1 / v.norm_squared


def _closed_form(v: SurfaceValuation, m: Fraction) -> ExceptionalDivisor:
    factor = m / v.norm_squared
    return ExceptionalDivisor(v.cluster, Basis.TOTAL_TRANSFORM, tuple(factor * x for x in v.values))


def on_lattice(v: SurfaceValuation, m) -> bool:
    """m · v_n / v² is an integer."""
    return (Fraction(m) * v.normalization / v.norm_squared).denominator == 1


def z_of_valuation_ideal(v: SurfaceValuation, m) -> BDivisorTrace:
    """
    Z(a_m) for a_m = {f : v(f) >= m}.

    a_m is the complete ideal of the least integral antinef divisor whose
    E_n coefficient reaches ⌈m / v_n⌉; Z(a_m) is minus that divisor.
    """
    m = Fraction(m)
    if m <= 0:
        raise InvalidIdealError(f"Valuation ideals need m > 0, got {m}")
    cluster = v.cluster
    target = ceil_fraction(m / v.normalization)
    constraint = ExceptionalDivisor.prime(cluster, cluster.n).scale(target)
    closure = antinef_closure(constraint, integral=True)

    agrees = closure.prime_coords == _closed_form(v, m).prime_coords
    if not agrees and on_lattice(v, m):
        logger.warning(f"Unloading disagrees with the closed form at lattice m={m}")
    elif not agrees:
        logger.debug(f"Closed form differs from unloading off the lattice at m={m}")
    return BDivisorTrace(
        exceptional=(-closure).in_basis(Basis.TOTAL_TRANSFORM),
        integral=True,
        closed_form_agrees=agrees,
    )


def closure_agrees_off_lattice(v: SurfaceValuation, m) -> bool:
    return z_of_valuation_ideal(v, m).closed_form_agrees


def valuation_ideal_multiplicities(v: SurfaceValuation, m) -> Tuple[int, ...]:
    """Multiplicities of a_m at the points of the cluster."""
    trace = z_of_valuation_ideal(v, m)
    return tuple(int(-c) for c in trace.coefficients(Basis.TOTAL_TRANSFORM))


def hd_length(cluster: Cluster, mults: Sequence[int]) -> int:
    """Colength of the complete ideal with these multiplicities: Σ m_i(m_i + 1)/2."""
    if any(Fraction(m).denominator != 1 for m in mults):
        raise RealizabilityError(f"Multiplicities must be integers: {list(mults)}")
    check_proximity_inequalities(cluster, mults)
    return sum(int(m) * (int(m) + 1) // 2 for m in mults)


def colength_of_valuation_ideal(v: SurfaceValuation, m) -> int:
    return hd_length(v.cluster, valuation_ideal_multiplicities(v, m))


def colength_closed_form(v: SurfaceValuation, m) -> Fraction:
    """m²/(2v²) + m Σv_i/(2v²), exact when m lies on the lattice."""
    m = Fraction(m)
    total = sum(v.values, Fraction(0))
    return (m * m + m * total) / (2 * v.norm_squared)


def dxi(v: SurfaceValuation) -> BDivisorTrace:
    """D_ξ = -vol(v) · Σ v_i Ē_i."""
    vol = volume(v)
    return BDivisorTrace(
        exceptional=ExceptionalDivisor(
            v.cluster, Basis.TOTAL_TRANSFORM, tuple(-vol * x for x in v.values)
        ),
    )


def ord_dxi(v: SurfaceValuation, f_mults: Sequence, residual=0) -> Fraction:
    """
    sup{t : div(f) + t D_ξ >= 0} on the last blowup model.

    ord_{E_j}(π*f) = Σ_i m_i ord_{E_j}(Ē_i); the supremum is the least
    ratio against the E_j coefficients of -D_ξ.

    ``residual`` is the value of the strict transform of f on the last
    model. That strict transform never contains E_n, so for a divisorial
    valuation any residual other than 0 contradicts the germ data.
    """
    residual = Fraction(residual)
    if residual != 0:
        raise RealizabilityError(f"The strict transform has value 0 along E_n, got residual {residual}")
    check_proximity_inequalities(v.cluster, f_mults)
    mults = [Fraction(x) for x in f_mults]
    coefficients = dxi(v).exceptional.prime_coords
    rows = v.cluster.values_matrix
    ratios = [
        sum((m * x for m, x in zip(mults, rows[j])), Fraction(0)) / -coefficients[j]
        for j in range(v.n)
    ]
    return min(ratios)


def ord_dxi_matches_noether(v: SurfaceValuation, f_mults: Sequence) -> bool:
    return ord_dxi(v, f_mults) == noether_value(v.values, f_mults)


def approximants_from_quotients(
    smaller_weight, quotients: Iterable[int], k_max: int
) -> Tuple[SurfaceValuation, ...]:
    """
    Divisorial valuations increasing to v_w, w = (w_1, w_1 · r).

    r >= 1 is given by its partial quotients. The k-th approximant is the
    monomial valuation of weights (w_1, w_1 · p_k/q_k) for the lower
    convergents p_k/q_k of r, so every approximant takes the value w_1 at
    the first center. A finite stream closes with v_w itself.
    """
    smaller_weight = Fraction(smaller_weight)
    if smaller_weight <= 0:
        raise InvalidWeightsError(f"Weight must be positive, got {smaller_weight}")
    if k_max < 1:
        raise StreamExhaustedError(f"Need at least one approximant, got k_max={k_max}")
    quotients = iter(quotients)
    head = next(quotients, None)
    if head is None or head < 1:
        raise ParseError("The weight ratio must be at least 1")
    ratios = list(itertools.islice(lower_convergents(itertools.chain([head], quotients)), k_max))
    if len(ratios) < k_max:
        raise StreamExhaustedError(
            f"The stream yields {len(ratios)} approximants, {k_max} requested"
        )
    return tuple(
        SurfaceValuation.from_weights((smaller_weight, smaller_weight * ratio))
        for ratio, _ in ratios
    )


def divisorial_approximants(w: Sequence, k_max: int) -> Tuple[SurfaceValuation, ...]:
    """
    Approximants of v_w for rational weights: v_w is already divisorial and
    is its own single approximant.
    """
    weights = tuple(Fraction(x) for x in w)
    if len(weights) != 2 or any(x <= 0 for x in weights):
        raise InvalidWeightsError(f"Expected two positive weights, got {weights}")
    if k_max < 1:
        raise StreamExhaustedError(f"Need at least one approximant, got k_max={k_max}")
    if k_max > 1:
        raise StreamExhaustedError(f"A rational weight ratio has a single approximant, {k_max} requested")
    return (SurfaceValuation.from_weights(weights),)
