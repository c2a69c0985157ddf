"""
Local positivity at a torus-fixed point of the projective plane.

Divisors on complete toric surfaces are handled through their fans: the
invariant curves D_i correspond to the rays u_i, and intersection numbers
come from determinants of consecutive rays. Seshadri constants of monomial
valuations reduce to nef thresholds on a single refinement of the fan of
P², and the asymptotic order of vanishing to a count of monomials.
"""

import functools
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Tuple

from .conf import get_setting
from .continued import convergents
from .exceptions import BasisMismatchError, InvalidWeightsError, ParseError
from .monomial import (
    WeightVector,
    dxi_boundary_coefficient,
    dxi_coefficient,
    valuation_ideal,
    z_divisor_coefficient,
)
from .rational import INF, is_inf, lcm_all, primitive

logger = logging.getLogger(__name__)

Ray = Tuple[int, int]

P2_RAYS: Tuple[Ray, ...] = ((1, 0), (0, 1), (-1, -1))
HYPERPLANE_RAY: Ray = (-1, -1)


def det(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _compare_angles(a: Ray, b: Ray) -> int:
    """Counterclockwise order starting from the positive x-axis."""
    half_a = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    half_b = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if half_a != half_b:
        return half_a - half_b
    turn = det(a, b)
    return -1 if turn > 0 else (1 if turn < 0 else 0)


def _in_first_quadrant(u: Ray) -> bool:
    return u[0] >= 0 and u[1] >= 0


@dataclass(frozen=True)
class ToricSurface:
    """
    A complete fan in Z², rays in counterclockwise order.

    Consecutive rays span strictly convex cones; a ray of index i meets
    only the curves of its two neighbours.
    """

    rays: Tuple[Ray, ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        if len(rays) < 3:
            raise ParseError(f"A complete fan needs at least three rays, got {len(rays)}")
        if len(set(rays)) != len(rays):
            raise ParseError(f"Repeated rays in {rays}")
        for r in rays:
            if primitive(r) != r:
                raise ParseError(f"Ray {r} is not primitive")
        ordered = sorted(rays, key=functools.cmp_to_key(_compare_angles))
        start = ordered.index(rays[0])
        if tuple(ordered[start:] + ordered[:start]) != rays:
            raise ParseError(f"Rays {rays} are not in counterclockwise order")
        for a, b in zip(rays, rays[1:] + rays[:1]):
            if det(a, b) <= 0:
                raise ParseError(f"Rays {a} and {b} do not span a strictly convex cone")
        object.__setattr__(self, 'rays', rays)

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence[int]]) -> 'ToricSurface':
        rays = sorted({tuple(int(x) for x in r) for r in rays}, key=functools.cmp_to_key(_compare_angles))
        return cls(tuple(rays))

    @classmethod
    def projective_plane(cls) -> 'ToricSurface':
        return cls.from_rays(P2_RAYS)

    @property
    def n(self) -> int:
        return len(self.rays)

    def index(self, ray: Sequence[int]) -> int:
        return self.rays.index(tuple(ray))

    def is_smooth(self) -> bool:
        return all(det(a, b) == 1 for a, b in zip(self.rays, self.rays[1:] + self.rays[:1]))

    def _neighbours(self, i: int) -> Tuple[Ray, Ray, Ray]:
        return self.rays[i - 1], self.rays[i], self.rays[(i + 1) % self.n]

    def self_intersection(self, i: int) -> Fraction:
        """D_i² = -det(u_{i-1}, u_{i+1}) / (det(u_{i-1}, u_i) det(u_i, u_{i+1}))."""
        prev, ray, nxt = self._neighbours(i)
        return Fraction(-det(prev, nxt), det(prev, ray) * det(ray, nxt))

    def curve_intersection(self, i: int, j: int) -> Fraction:
        """D_i · D_j."""
        if i == j:
            return self.self_intersection(i)
        if j == (i + 1) % self.n:
            return Fraction(1, det(self.rays[i], self.rays[j]))
        if i == (j + 1) % self.n:
            return Fraction(1, det(self.rays[j], self.rays[i]))
        return Fraction(0)

    def cone_containing(self, ray: Sequence[int]) -> int:
        """Index i with ray in the cone spanned by u_i and u_{i+1}."""
        for i in range(self.n):
            a, b = self.rays[i], self.rays[(i + 1) % self.n]
            if det(a, ray) >= 0 and det(ray, b) >= 0:
                return i
        raise ParseError(f"No cone contains {tuple(ray)}")

    def star_subdivide(self, ray: Sequence[int]) -> 'ToricSurface':
        ray = primitive(ray)
        if ray in self.rays:
            return self
        return ToricSurface.from_rays(self.rays + (ray,))

    def refine(self, rays: Iterable[Sequence[int]]) -> 'ToricSurface':
        surface = self
        for ray in rays:
            surface = surface.star_subdivide(ray)
        return surface

    def refines(self, other: 'ToricSurface') -> bool:
        return set(other.rays) <= set(self.rays)


@dataclass(frozen=True)
class ToricDivisor:
    """Σ c_i D_i on a toric surface, one coefficient per ray."""

    surface: ToricSurface
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.surface.n:
            raise BasisMismatchError(
                f"Expected {self.surface.n} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, 'coeffs', tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_function(cls, surface: ToricSurface, coefficient: Callable[[Ray], Fraction]) -> 'ToricDivisor':
        return cls(surface, tuple(coefficient(ray) for ray in surface.rays))

    @classmethod
    def hyperplane(cls, surface: ToricSurface) -> 'ToricDivisor':
        """The pullback of the line z = 0 of P² to a refinement of its fan."""
        plane = ToricSurface.projective_plane()
        if not surface.refines(plane):
            raise BasisMismatchError("The surface does not refine the fan of P²")
        line = cls.from_function(plane, lambda ray: Fraction(int(ray == HYPERPLANE_RAY)))
        return line.pullback(surface)

    def coefficient(self, ray: Sequence[int]) -> Fraction:
        return self.coeffs[self.surface.index(ray)]

    def _check_same_surface(self, other: 'ToricDivisor'):
        if self.surface != other.surface:
            raise BasisMismatchError("Divisors live on different fans")

    def __add__(self, other: 'ToricDivisor') -> 'ToricDivisor':
        self._check_same_surface(other)
        return ToricDivisor(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, factor) -> 'ToricDivisor':
        factor = Fraction(factor)
        return ToricDivisor(self.surface, tuple(factor * c for c in self.coeffs))

    def intersect_curve(self, i: int) -> Fraction:
        n = self.surface.n
        return sum(
            (self.coeffs[j] * self.surface.curve_intersection(j, i) for j in {(i - 1) % n, i, (i + 1) % n}),
            Fraction(0),
        )

    def intersections(self) -> Tuple[Fraction, ...]:
        return tuple(self.intersect_curve(i) for i in range(self.surface.n))

    def is_nef(self) -> bool:
        return all(x >= 0 for x in self.intersections())

    def pullback(self, target: ToricSurface) -> 'ToricDivisor':
        """
        Pull back along a refinement of the fan.

        A new ray r = α u_i + β u_{i+1} in the cone of u_i, u_{i+1} gets the
        coefficient α c_i + β c_{i+1}.
        """
        if not target.refines(self.surface):
            raise BasisMismatchError("The target fan does not refine the source fan")
        source = self.surface
        coeffs = []
        for ray in target.rays:
            if ray in source.rays:
                coeffs.append(self.coefficient(ray))
                continue
            i = source.cone_containing(ray)
            a, b = source.rays[i], source.rays[(i + 1) % source.n]
            area = det(a, b)
            alpha = Fraction(det(ray, b), area)
            beta = Fraction(det(a, ray), area)
            coeffs.append(alpha * self.coeffs[i] + beta * self.coeffs[(i + 1) % source.n])
        return ToricDivisor(target, tuple(coeffs))


def nef_threshold_model(d: ToricDivisor, z: ToricDivisor):
    """
    sup{t >= 0 : d + t z is nef}, or INF when no curve constrains t.

    d must be nef; the supremum is the least a_j / (-b_j) over invariant
    curves with z · C_j = b_j < 0, where a_j = d · C_j.
    """
    d._check_same_surface(z)
    best = INF
    for a, b in zip(d.intersections(), z.intersections()):
        if a < 0:
            raise InvalidWeightsError(f"The divisor {d.coeffs} is not nef")
        if b < 0:
            ratio = a / -b
            if is_inf(best) or ratio < best:
                best = ratio
    return best


def _plane_weights(w) -> WeightVector:
    w = WeightVector.coerce(w)
    if w.c != 2 or not w.is_finite():
        raise InvalidWeightsError(f"Expected two finite weights, got {w}")
    return w


def dxi_on_ray(w, ray: Ray) -> Fraction:
    """The D_ξ coefficient of v_w at an invariant divisor of a refinement of P²."""
    w = _plane_weights(w)
    if not _in_first_quadrant(ray):
        return Fraction(0)
    if w.zero_indices():
        return dxi_boundary_coefficient(w, ray)
    return dxi_coefficient(w, ray)


def seshadri_model(w) -> Fraction:
    """
    ε(H, v_w) as the nef threshold of H + t D_ξ on the fan of P² refined by
    the ray of w, where the trace of D_ξ is linear on every cone.
    """
    w = _plane_weights(w)
    surface = ToricSurface.projective_plane().star_subdivide(w.entries)
    hyperplane = ToricDivisor.hyperplane(surface)
    trace = ToricDivisor.from_function(surface, lambda ray: dxi_on_ray(w, ray))
    return nef_threshold_model(hyperplane, trace)


def seshadri_limit_term(w, m) -> Fraction:
    """
    t_m = sup{t : m H + t Z(a_m) is nef}, decided on the fan of P² refined
    by the facet normals of the Newton polygon of a_m.
    """
    w = _plane_weights(w)
    w.require_interior()
    m = Fraction(m)
    ideal = valuation_ideal(w, m)
    normals = [f.normal for f in ideal.newton_polyhedron.facets]
    surface = ToricSurface.projective_plane().refine(normals)
    hyperplane = ToricDivisor.hyperplane(surface).scale(m)
    trace = ToricDivisor.from_function(
        surface,
        lambda ray: z_divisor_coefficient(ideal, ray) if _in_first_quadrant(ray) else Fraction(0),
    )
    return nef_threshold_model(hyperplane, trace)


def lattice_multiplier(w) -> int:
    """Least m with m / w_i integral for every nonzero w_i."""
    w = _plane_weights(w)
    return lcm_all(x.numerator for x in w if x != 0)


class SeshadriResult(NamedTuple):
    value: Fraction
    model_value: Optional[Fraction]
    limit_value: Optional[Fraction]
    m_used: Optional[int]

    @property
    def routes_agree(self) -> Optional[bool]:
        if self.model_value is None or self.limit_value is None:
            return None
        return self.model_value == self.limit_value


def seshadri(w, via: str = 'model', m=None) -> SeshadriResult:
    """
    The Seshadri constant of the hyperplane class along v_w.

    ``via`` chooses the single-model nef threshold, the threshold t_m of the
    ideal a_m (at the lattice multiplier unless m is given), or both; when
    both disagree the model value is returned and the disagreement logged.
    """
    if via not in ('model', 'limit', 'both'):
        raise ParseError(f"Unknown Seshadri route '{via}'")
    w = _plane_weights(w)
    model_value = limit_value = m_used = None
    if via in ('model', 'both'):
        model_value = seshadri_model(w)
    if via in ('limit', 'both'):
        m_used = int(m) if m is not None else lattice_multiplier(w)
        limit_value = seshadri_limit_term(w, m_used)
    result = SeshadriResult(
        model_value if model_value is not None else limit_value,
        model_value,
        limit_value,
        m_used,
    )
    if result.routes_agree is False:
        logger.warning(
            f"Seshadri routes disagree at w={w}: model {model_value}, limit {limit_value} at m={m_used}"
        )
    return result


@dataclass(frozen=True)
class CurveGermSpec:
    """
    A curve through the point: its degree and, per coordinate, the sum of
    the orders of that coordinate along the branches (INF when the curve
    lies in the coordinate line).
    """

    degree: int
    orders: Tuple
    label: str = ''

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidWeightsError(f"Curve degree must be positive, got {self.degree}")
        if all(is_inf(a) for a in self.orders):
            raise InvalidWeightsError("A curve germ needs a finite branch order")


def seshadri_curve_bound(w, curve: CurveGermSpec) -> Fraction:
    """ε_C = deg(C) · max_j w_j / a_j, with w_j / INF = 0."""
    w = WeightVector.coerce(w)
    w.require_interior()
    if len(curve.orders) != w.c:
        raise InvalidWeightsError(f"Curve orders {curve.orders} do not match {w.c} weights")
    return curve.degree * max(
        Fraction(0) if is_inf(a) else wj / a for wj, a in zip(w, curve.orders)
    )


def curve_family(degree_cap: int = None) -> Tuple[CurveGermSpec, ...]:
    """Coordinate lines, a general line and the curves y = x^k, x = y^k."""
    cap = degree_cap if degree_cap is not None else get_setting('VALCALC_CURVE_FAMILY_DEGREE')
    curves = [
        CurveGermSpec(1, (INF, 1), 'x=0'),
        CurveGermSpec(1, (1, INF), 'y=0'),
        CurveGermSpec(1, (1, 1), 'y=x'),
    ]
    for k in range(2, cap + 1):
        curves.append(CurveGermSpec(k, (1, k), f'y=x^{k}'))
        curves.append(CurveGermSpec(k, (k, 1), f'x=y^{k}'))
    return tuple(curves)


class WaldschmidtResult(NamedTuple):
    value: Fraction
    certified_exact: bool
    degree: int


def waldschmidt(w, k_cap: int) -> WaldschmidtResult:
    """
    ω(H, v_w) = sup over degree-k monomials x^a y^b z^{k-a-b} of
    (a w_1 + b w_2) / k, enumerated up to k_cap. The result is certified
    exact when no degree above 1 improves on degree 1.
    """
    if k_cap < 1:
        raise ParseError(f"Degree cap must be at least 1, got {k_cap}")
    w = _plane_weights(w)
    best, best_degree = Fraction(-1), 0
    first = None
    for k in range(1, k_cap + 1):
        top = max(
            Fraction(a * w[0] + b * w[1], k)
            for a in range(k + 1) for b in range(k + 1 - a)
        )
        if k == 1:
            first = top
        if top > best:
            best, best_degree = top, k
    return WaldschmidtResult(best, best == first, best_degree)


class RationalSandwich(NamedTuple):
    lower_ratio: Fraction
    upper_ratio: Fraction
    epsilon: Tuple[Fraction, Fraction]
    omega: Tuple[Fraction, Fraction]


def rational_sandwich(smaller_weight, quotients: Iterable[int], depth: int) -> RationalSandwich:
    """
    Two-sided rational bounds for an irrational weight (w_1, w_1 · r).

    Consecutive convergents of r enclose it, and ε and ω are monotone in
    each weight, so their values at the enclosing rational weights bound
    the irrational ones.
    """
    if depth < 2:
        raise ParseError(f"A sandwich needs depth at least 2, got {depth}")
    smaller_weight = Fraction(smaller_weight)
    pair = list(itertools.islice(convergents(quotients), depth))
    if len(pair) < 2:
        raise ParseError("The stream is too short for a sandwich")
    a, b = Fraction(*pair[-2]), Fraction(*pair[-1])
    lower, upper = min(a, b), max(a, b)
    low_w = (smaller_weight, smaller_weight * lower)
    high_w = (smaller_weight, smaller_weight * upper)
    return RationalSandwich(
        lower,
        upper,
        (seshadri_model(low_w), seshadri_model(high_w)),
        (waldschmidt(low_w, 1).value, waldschmidt(high_w, 1).value),
    )
