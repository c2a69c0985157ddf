"""
Verification suites: exact cross-checks between independent computations.

Each check yields Certificates. Random inputs come from a seeded generator
so a suite always runs the same cases.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Tuple

import sympy
from sympy.solvers.simplex import lpmin

from .certificates import BOUND_PASS, EXACT_PASS, FAIL, Certificate
from .cluster import (
    Basis,
    Cluster,
    ExceptionalDivisor,
    antinef_closure,
    basis_convert,
    intersect,
    noether_value,
    values_of_divisorial,
)
from .conf import get_setting
from .continued import golden_quotients, sqrt_quotients
from .monomial import (
    arnold,
    arnold_of_filtration,
    arnold_sequence,
    asymptotic_multiplier_divisor,
    asymptotic_multiplier_ideal,
    boundary_jump,
    dxi_coefficient,
    lct,
    log_discrepancy,
    monomial_value,
    multiplier_ideal,
    valuation_ideal,
    z_divisor_coefficient,
)
from .polyhedra import MonomialIdeal
from .rational import INF, format_weights
from .scan import parse_grid, semicontinuity_scan
from .serializers import load_json, parse_germ, parse_valuation
from .surface import (
    SurfaceValuation,
    approximants_from_quotients,
    colength_closed_form,
    colength_of_valuation_ideal,
    divisorial_approximants,
    dxi,
    hd_length,
    on_lattice,
    ord_dxi,
    toric_cluster,
    volume,
    z_of_valuation_ideal,
)
from .toric import (
    CurveGermSpec,
    ToricDivisor,
    ToricSurface,
    curve_family,
    dxi_on_ray,
    lattice_multiplier,
    nef_threshold_model,
    rational_sandwich,
    seshadri,
    seshadri_curve_bound,
    seshadri_limit_term,
    seshadri_model,
    waldschmidt,
)

logger = logging.getLogger(__name__)

SEED = 20240601
SUITE_NAMES = ('monomial', 'surface', 'positivity')

Check = Callable[[], Iterable[Certificate]]
SUITES: Dict[str, List[Check]] = {name: [] for name in SUITE_NAMES}

F = Fraction


def check(suite: str):
    def register(fn: Check) -> Check:
        SUITES[suite].append(fn)
        return fn
    return register


def random_cluster(rng: random.Random, max_points: int) -> Cluster:
    """Each new point is free, or satellite on the other divisor the previous point lies on."""
    lists = [[]]
    for i in range(2, rng.randint(1, max_points) + 1):
        others = lists[-1]
        if others and rng.random() < 0.5:
            lists.append([i - 1, rng.choice(others)])
        else:
            lists.append([i - 1])
    return Cluster.from_lists(lists)


def random_germ(rng: random.Random, cluster: Cluster) -> Tuple[int, ...]:
    """Multiplicities satisfying the proximity inequalities, built from the last point back."""
    mults = [0] * cluster.n
    for i in range(cluster.n, 0, -1):
        load = sum(mults[k - 1] for k in cluster.points_proximate_to(i))
        mults[i - 1] = load + rng.randint(0, 2)
    return tuple(mults)


def random_ideal(rng: random.Random, c: int, max_gens: int = 6, max_exponent: int = 4) -> MonomialIdeal:
    gens = [tuple(rng.randint(0, max_exponent) for _ in range(c)) for _ in range(rng.randint(1, max_gens))]
    gens = [g for g in gens if any(g)] or [(1,) * c]
    return MonomialIdeal.of(gens)


def coprime_weights(bound: int = 7) -> List[Tuple[int, int]]:
    return [
        (p, q) for p in range(1, bound + 1) for q in range(1, bound + 1) if math.gcd(p, q) == 1
    ]


TWO_ONE_ONE = Cluster.from_lists([[], [1], [2, 1]])
CHAIN_TWO = Cluster.chain(2)


# Monomial valuations

@check('monomial')
def monomial_value_examples():
    yield Certificate.equality('monomial_value/(1,2)', monomial_value((1, 2), [(0, 1), (3, 0)]), F(2))
    yield Certificate.equality('monomial_value/unit', monomial_value((1, 1), [(0, 0), (1, 0)]), F(0))
    yield Certificate.equality('monomial_value/kernel', monomial_value((1, INF), [(0, 1)]), INF)


@check('monomial')
def valuation_ideal_examples():
    cases = [
        ((1, 1), 2, [(2, 0), (1, 1), (0, 2)]),
        ((1, 2), 2, [(2, 0), (0, 1)]),
        ((2, 3), 6, [(3, 0), (2, 1), (0, 2)]),
    ]
    for w, m, gens in cases:
        yield Certificate.equality(
            f'valuation_ideal/w=({format_weights(w)}),m={m}', valuation_ideal(w, m), MonomialIdeal.of(gens)
        )


@check('monomial')
def z_divisor_examples():
    yield Certificate.equality(
        'z_divisor/(1,1),2', z_divisor_coefficient(valuation_ideal((1, 1), 2), (1, 1)), F(-2)
    )
    yield Certificate.equality('z_divisor/unit', z_divisor_coefficient(MonomialIdeal.unit(2), (3, 1)), F(0))
    yield Certificate.equality(
        'z_divisor/(2,3),6', z_divisor_coefficient(valuation_ideal((2, 3), 6), (1, 1)), F(-2)
    )


@check('monomial')
def dxi_examples():
    yield Certificate.equality('dxi/(1,1)', dxi_coefficient((1, 1), (1, 1)), F(-1))
    yield Certificate.equality('dxi/(2,3)', dxi_coefficient((2, 3), (1, 1)), F(-1, 3))
    yield Certificate.equality('dxi/axis_not_contracted', dxi_coefficient((1, 5), (1, 0)), F(0))
    yield Certificate.equality('dxi/seminorm', dxi_coefficient((1, INF), (1, 1)), F(0))
    for w in [(1, 1), (2, 3), (F(1, 2), F(3, 4))]:
        for u in [(1, 1), (1, 2), (3, 1)]:
            ideal_limit = z_divisor_coefficient(valuation_ideal(w, 60), u) / 60
            yield Certificate.inequality(f'dxi/limit_bound/w=({format_weights(w)}),u={u}', ideal_limit, dxi_coefficient(w, u))
            for scale in (2, 3, F(1, 2)):
                scaled = tuple(scale * x for x in w)
                yield Certificate.equality(
                    f'dxi/scaling/w=({format_weights(w)}),u={u},l={scale}',
                    dxi_coefficient(scaled, u),
                    dxi_coefficient(w, u) / scale,
                )


@check('monomial')
def boundary_jump_examples():
    cases = [
        ((1, 0), (F(0), F(-1))),
        ((2, 3, 0), (F(0), F(-1, 3))),
        ((F(1, 2), 0), (F(0), F(-2))),
        ((3, 0), (F(0), F(-1, 3))),
        ((0, F(5, 7)), (F(0), F(-7, 5))),
        ((1, 0, 0), (F(0), F(-1))),
        ((0, 2, 0), (F(0), F(-1, 2))),
        ((1, 1, 0), (F(0), F(-1))),
        ((0, 4, 5), (F(0), F(-1, 5))),
        ((F(3, 2), 0, F(1, 3)), (F(0), F(-2, 3))),
    ]
    for w, expected in cases:
        yield Certificate.equality(f'boundary_jump/w=({format_weights(w)})', tuple(boundary_jump(w)), expected)


@check('monomial')
def lct_examples():
    cusp = MonomialIdeal.of([(2, 0), (0, 3)])
    yield Certificate.equality('lct/(x2,y3)', lct(cusp), F(5, 6))
    yield Certificate.equality('arnold/(x2,y3)', arnold(cusp), F(6, 5))
    for c in (1, 2, 3):
        yield Certificate.equality(f'lct/maximal/c={c}', lct(MonomialIdeal.maximal(c)), F(c))
    for k in range(1, 5):
        yield Certificate.equality(f'lct/principal/k={k}', lct(MonomialIdeal.of([(k,)])), F(1, k))
        yield Certificate.equality(f'lct/principal2/k={k}', lct(MonomialIdeal.of([(k, 0)])), F(1, k))
    rng = random.Random(SEED)
    for trial in range(20):
        a = random_ideal(rng, 2)
        if a.is_unit():
            continue
        for k in range(1, 6):
            yield Certificate.equality(
                f'lct/homogeneity/{trial}/k={k}', lct(a.power(k)), lct(a) / k, ideal=a
            )


@check('monomial')
def multiplier_ideal_examples():
    cusp = MonomialIdeal.of([(2, 0), (0, 3)])
    yield Certificate.equality(
        'multiplier/(x2,y3)^(5/6)', multiplier_ideal(cusp, F(5, 6)), MonomialIdeal.maximal(2)
    )
    yield Certificate.equality(
        'multiplier/maximal^1', multiplier_ideal(MonomialIdeal.maximal(2), 1), MonomialIdeal.unit(2)
    )
    rng = random.Random(SEED + 1)
    for trial in range(20):
        c = rng.randint(1, 3)
        a = random_ideal(rng, c)
        exponent = F(rng.randint(1, 6), 4)
        if exponent <= 1:
            yield Certificate.holds(
                f'multiplier/contains/{trial}', a.is_subideal(multiplier_ideal(a, exponent)),
                ideal=a, exponent=exponent,
            )
        for power in (2, 3):
            yield Certificate.holds(
                f'multiplier/subadditivity/{trial}/l={power}',
                multiplier_ideal(a, power * exponent).is_subideal(multiplier_ideal(a, exponent).power(power)),
                ideal=a, exponent=exponent,
            )


@check('monomial')
def asymptotic_multiplier_examples():
    yield Certificate.equality('asymptotic/(1,1),m=2', asymptotic_multiplier_divisor((1, 1), 2, (1, 1)), F(-1))
    weights = [(1, 1), (1, 2), (2, 3), (F(1, 2), 1), (3, 5)]
    rays = [(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)]
    for w in weights:
        for m in range(1, 13):
            a_m = valuation_ideal(w, m)
            asymptotic = asymptotic_multiplier_ideal(w, m).ideal
            for u in rays:
                lower = z_divisor_coefficient(a_m, u)
                middle = m * dxi_coefficient(w, u)
                upper = z_divisor_coefficient(asymptotic, u)
                ok = lower <= middle <= upper <= 0
                yield Certificate(
                    f'sandwich/w=({format_weights(w)}),m={m},u={u}', BOUND_PASS if ok else FAIL,
                    {'z': lower, 'm_dxi': middle, 'asymptotic': upper},
                )


@check('monomial')
def arnold_filtration_examples():
    yield Certificate.equality('arnold_filtration/(1,1)', arnold_of_filtration((1, 1)), F(1, 2))
    yield Certificate.equality(
        'arnold_filtration/(2,3)/lattice', arnold_sequence((2, 3), [6, 12, 18]), (F(1, 5),) * 3
    )
    rng = random.Random(SEED + 2)
    for trial in range(50):
        w = (F(rng.randint(1, 9), rng.randint(1, 9)), F(rng.randint(1, 9), rng.randint(1, 9)))
        ok = arnold_of_filtration(w) > 0 and dxi_coefficient(w, (1, 1)) < 0
        yield Certificate.holds(f'arnold_filtration/nonvanishing/{trial}', ok, weights=w)
        yield Certificate.inequality(
            f'log_discrepancy/bound/{trial}', dxi_coefficient(w, (1, 1)), -1 / log_discrepancy(w), weights=w
        )
        lattice = math.lcm(w[0].numerator, w[1].numerator)
        yield Certificate.equality(
            f'arnold_filtration/lattice/{trial}',
            arnold_sequence(w, [lattice])[0], arnold_of_filtration(w), weights=w,
        )


@check('monomial')
def filtration_multiplicativity():
    steps = [F(1, 2), F(1), F(3, 2), F(2)]
    for w in [(1, 1), (2, 3), (F(1, 2), F(3, 4)), (1, 2, 3)]:
        for m, n in itertools.product(steps, repeat=2):
            product = valuation_ideal(w, m) * valuation_ideal(w, n)
            yield Certificate.holds(
                f'multiplicativity/w=({format_weights(w)}),m={m},n={n}', product.is_subideal(valuation_ideal(w, m + n))
            )


# Surface valuations

@check('surface')
def cluster_examples():
    yield Certificate.equality('values/chain', values_of_divisorial(CHAIN_TWO, 2, 1), (F(1), F(1)))
    yield Certificate.equality('values/(2,1,1)', values_of_divisorial(TWO_ONE_ONE, 3, 1), (F(2), F(1), F(1)))
    yield Certificate.equality('values/point', values_of_divisorial(Cluster.chain(1), 1, 5), (F(5),))

    e1_strict = ExceptionalDivisor.prime(CHAIN_TWO, 1)
    e1_total = ExceptionalDivisor.total(CHAIN_TWO, 1)
    yield Certificate.equality('basis/strict_to_total', e1_strict.total_coords, (F(1), F(-1)))
    yield Certificate.equality('basis/total_to_prime', e1_total.prime_coords, (F(1), F(1)))
    zero = ExceptionalDivisor.zero(TWO_ONE_ONE)
    yield Certificate.equality('basis/zero', basis_convert(zero, Basis.TOTAL_TRANSFORM).coeffs, (F(0),) * 3)

    yield Certificate.equality('intersect/total', intersect(e1_total, e1_total), F(-1))
    yield Certificate.equality('intersect/strict_square', intersect(e1_strict, e1_strict), F(-2))
    yield Certificate.equality(
        'intersect/strict_pair', intersect(e1_strict, ExceptionalDivisor.prime(CHAIN_TWO, 2)), F(1)
    )

    closure = antinef_closure(ExceptionalDivisor.prime(TWO_ONE_ONE, 3))
    yield Certificate.equality(
        'antinef_closure/(2,1,1)', closure.total_coords, (F(1, 3), F(1, 6), F(1, 6))
    )
    last = ExceptionalDivisor.total(TWO_ONE_ONE, 1)
    yield Certificate.equality('antinef_closure/fixpoint', antinef_closure(last).total_coords, last.total_coords)

    yield Certificate.equality('noether/(2,1,1)', noether_value((2, 1, 1), (1, 1, 0)), F(3))
    yield Certificate.equality('noether/zero', noether_value((2, 1, 1), (0, 0, 0)), F(0))
    yield Certificate.equality('noether/point', noether_value((1,), (7,)), F(7))


def least_antinef_sum(d: ExceptionalDivisor) -> Fraction:
    """min of the coefficient sum over antinef divisors above d, as an exact linear program."""
    xs = sympy.symbols(f'x1:{d.cluster.n + 1}')
    constraints = [x >= sympy.Rational(c.numerator, c.denominator) for x, c in zip(xs, d.prime_coords)]
    for row in d.cluster.intersection_matrix:
        constraints.append(sum(a * x for a, x in zip(row, xs)) <= 0)
    value = sympy.Rational(lpmin(sum(xs), constraints)[0])
    return Fraction(int(value.p), int(value.q))


@check('surface')
def antinef_closure_properties():
    rng = random.Random(SEED + 3)
    for trial in range(200):
        cluster = random_cluster(rng, 8)
        d = ExceptionalDivisor(
            cluster, Basis.PRIME, tuple(F(rng.randint(-2, 4), rng.randint(1, 3)) for _ in range(cluster.n))
        )
        closure = antinef_closure(d)
        ok = closure.is_antinef() and d.dominated_by(closure) and antinef_closure(closure) == closure
        yield Certificate.holds(f'antinef_closure/properties/{trial}', ok, cluster=cluster)
        yield Certificate.equality(
            f'antinef_closure/linear_program/{trial}', sum(closure.prime_coords), least_antinef_sum(d),
            cluster=cluster,
        )
        larger = d + ExceptionalDivisor(
            cluster, Basis.PRIME, tuple(F(rng.randint(0, 3), rng.randint(1, 2)) for _ in range(cluster.n))
        )
        yield Certificate.holds(
            f'antinef_closure/monotone/{trial}', closure.dominated_by(antinef_closure(larger)), cluster=cluster
        )


@check('surface')
def z_of_valuation_ideal_examples():
    cases = [
        (SurfaceValuation.divisorial(TWO_ONE_ONE), 6, (F(-2), F(-1), F(-1))),
        (SurfaceValuation.divisorial(Cluster.chain(1)), 3, (F(-3),)),
        (SurfaceValuation.divisorial(CHAIN_TWO), 1, (F(-1), F(0))),
    ]
    for v, m, expected in cases:
        yield Certificate.equality(
            f'z_ideal/({format_weights(v.values)}),m={m}', z_of_valuation_ideal(v, m).coefficients(), expected
        )
    rng = random.Random(SEED + 4)
    for trial in range(20):
        v = SurfaceValuation.divisorial(random_cluster(rng, 7))
        for k in range(1, 6):
            m = k * v.norm_squared
            expected = tuple(-m / v.norm_squared * x for x in v.values)
            yield Certificate.equality(
                f'z_ideal/lattice/{trial}/m={m}', z_of_valuation_ideal(v, m).coefficients(), expected,
                cluster=v.cluster,
            )


@check('surface')
def hoskin_deligne():
    yield Certificate.equality('hd_length/(2,1,1)', hd_length(TWO_ONE_ONE, (2, 1, 1)), 5)
    for k in range(5):
        yield Certificate.equality(f'hd_length/point/k={k}', hd_length(Cluster.chain(1), (k,)), k * (k + 1) // 2)
    yield Certificate.equality('hd_length/chain', hd_length(CHAIN_TWO, (1, 1)), 2)
    for p, q in coprime_weights():
        v = toric_cluster((p, q)).valuation
        for m in range(1, 61):
            yield Certificate.equality(
                f'hd_length/brute_force/w=({p},{q}),m={m}',
                colength_of_valuation_ideal(v, m), valuation_ideal((p, q), m).colength(),
            )
            if on_lattice(v, m):
                yield Certificate.equality(
                    f'colength/closed_form/w=({p},{q}),m={m}',
                    F(colength_of_valuation_ideal(v, m)), colength_closed_form(v, m),
                )


@check('surface')
def volume_and_dxi():
    yield Certificate.equality('volume/point', volume(SurfaceValuation.divisorial(Cluster.chain(1))), F(1))
    yield Certificate.equality('volume/(2,1,1)', volume(SurfaceValuation.divisorial(TWO_ONE_ONE)), F(1, 6))
    yield Certificate.equality('volume/chain', volume(SurfaceValuation.divisorial(CHAIN_TWO)), F(1, 2))
    for p, q in coprime_weights():
        yield Certificate.equality(f'volume/toric/({p},{q})', volume(toric_cluster((p, q)).valuation), F(1, p * q))

    yield Certificate.equality(
        'dxi/point', dxi(SurfaceValuation.divisorial(Cluster.chain(1))).coefficients(), (F(-1),)
    )
    yield Certificate.equality(
        'dxi/(2,1,1)', dxi(SurfaceValuation.divisorial(TWO_ONE_ONE)).coefficients(),
        (F(-1, 3), F(-1, 6), F(-1, 6)),
    )
    for w in [(1, 1), (1, 2), (2, 3), (3, 5), (4, 7), (F(1, 2), F(5, 3))]:
        toric = toric_cluster(w)
        prime = dxi(toric.valuation).exceptional.prime_coords
        for j, ray in enumerate(toric.rays):
            yield Certificate.equality(f'dxi/toric/w=({format_weights(w)}),E_{j + 1}', prime[j], dxi_coefficient(w, ray))


@check('surface')
def b_divisorial_identity():
    yield Certificate.equality('ord_dxi/(2,1,1)', ord_dxi(SurfaceValuation.divisorial(TWO_ONE_ONE), (1, 1, 0)), F(3))
    yield Certificate.equality('ord_dxi/point', ord_dxi(SurfaceValuation.divisorial(Cluster.chain(1)), (4,)), F(4))
    yield Certificate.equality('ord_dxi/chain', ord_dxi(SurfaceValuation.divisorial(CHAIN_TWO), (1, 0)), F(1))
    data_dir = Path(get_setting('VALCALC_DATA_DIR'))
    sample = parse_valuation(load_json(data_dir / 'w23.json'))
    mults, residual = parse_germ(load_json(data_dir / 'cusp_germ.json'))
    yield Certificate.equality(
        'ord_dxi/sample_germ', ord_dxi(sample, mults, residual), noether_value(sample.values, mults),
        mults=mults,
    )
    rng = random.Random(SEED + 5)
    for trial in range(100):
        cluster = random_cluster(rng, 7)
        v = SurfaceValuation.divisorial(cluster, F(rng.randint(1, 4), rng.randint(1, 3)))
        mults = random_germ(rng, cluster)
        yield Certificate.equality(
            f'ord_dxi/noether/{trial}', ord_dxi(v, mults), noether_value(v.values, mults),
            cluster=cluster, mults=mults,
        )


@check('surface')
def approximant_streams():
    golden = approximants_from_quotients(1, golden_quotients(), 4)
    yield Certificate.equality(
        'approximants/golden/volumes', tuple(volume(v) for v in golden),
        (F(1), F(2, 3), F(5, 8), F(13, 21)),
    )
    root_two = approximants_from_quotients(1, sqrt_quotients(2), 5)
    volumes = [volume(v) for v in root_two]
    ok = all(a > b for a, b in zip(volumes, volumes[1:])) and all(x > F(2, 3) for x in volumes)
    yield Certificate.holds('approximants/sqrt2/monotone_bounded', ok, volumes=volumes)
    yield Certificate.holds(
        'approximants/first_value', all(v.values[0] == 1 for v in golden + root_two)
    )
    (exact,) = divisorial_approximants((2, 3), 1)
    yield Certificate.equality('approximants/rational', exact.values, (F(2), F(1), F(1)))
    (point,) = divisorial_approximants((1, 1), 1)
    yield Certificate.equality('approximants/point', point.values, (F(1),))
    finite = approximants_from_quotients(2, (1, 2), 2)
    yield Certificate.equality('approximants/finite_stream_terminal', finite[-1].values, (F(2), F(1), F(1)))


# Positivity on the projective plane

@check('positivity')
def nef_threshold_examples():
    surface = ToricSurface.projective_plane().star_subdivide((1, 1))
    hyperplane = ToricDivisor.hyperplane(surface)
    exceptional = ToricDivisor.from_function(surface, lambda ray: F(-int(ray == (1, 1))))
    yield Certificate.equality('nef_threshold/one_point', nef_threshold_model(hyperplane, exceptional), F(1))
    yield Certificate.equality('nef_threshold/zero', nef_threshold_model(hyperplane, exceptional.scale(0)), INF)


@check('positivity')
def seshadri_examples():
    yield Certificate.equality('seshadri/(1,1)', seshadri((1, 1)).value, F(1))
    for m in range(1, 11):
        yield Certificate.equality(f'seshadri/example/m={m}', seshadri((1, F(1, m))).value, F(1, m))
    yield Certificate.equality('seshadri/divisorial_limit', seshadri((1, 0)).value, F(1))
    weights = [(1, 1), (1, 2), (2, 3), (3, 5), (F(1, 2), 1), (F(2, 3), F(3, 4)), (5, 2), (1, F(1, 7)), (4, 7), (F(5, 3), 2)]
    for w in weights:
        both = seshadri(w, via='both')
        yield Certificate.equality(f'seshadri/routes/w=({format_weights(w)})', both.model_value, both.limit_value, m=both.m_used)
        model = both.model_value
        lattice = lattice_multiplier(w)
        terms = [seshadri_limit_term(w, k * lattice) for k in range(1, 4)]
        ok = all(a <= b for a, b in zip(terms, terms[1:])) and max(terms) == model
        yield Certificate.holds(f'seshadri/fekete/w=({format_weights(w)})', ok, terms=terms, model=model)
        for m in range(1, 13):
            yield Certificate.inequality(f'seshadri/t_m_below/w=({format_weights(w)}),m={m}', seshadri_limit_term(w, m), model)
        for scale in (2, F(1, 3)):
            scaled = tuple(scale * x for x in w)
            yield Certificate.equality(
                f'seshadri/scaling/w=({format_weights(w)}),l={scale}', seshadri_model(scaled), scale * model
            )
            yield Certificate.equality(
                f'waldschmidt/scaling/w=({format_weights(w)}),l={scale}',
                waldschmidt(scaled, 2).value, scale * waldschmidt(w, 2).value,
            )


@check('positivity')
def curve_bounds():
    for m in (2, 5, 10):
        w = (1, F(1, m))
        yield Certificate.equality(f'curve/x=0/m={m}', seshadri_curve_bound(w, CurveGermSpec(1, (INF, 1))), F(1, m))
        yield Certificate.equality(f'curve/y=0/m={m}', seshadri_curve_bound(w, CurveGermSpec(1, (1, INF))), F(1))
        for k in (2, 3, 7):
            yield Certificate.equality(
                f'curve/y=x^{k}/m={m}', seshadri_curve_bound(w, CurveGermSpec(k, (1, k))), F(k)
            )
    for w in [(1, 1), (2, 3), (F(1, 3), 1), (5, 2)]:
        epsilon = seshadri_model(w)
        bounds = [seshadri_curve_bound(w, curve) for curve in curve_family()]
        yield Certificate.holds(f'curve/upper_bound/w=({format_weights(w)})', all(epsilon <= b for b in bounds))
        yield Certificate.equality(f'curve/attained/w=({format_weights(w)})', min(bounds), epsilon)


@check('positivity')
def waldschmidt_examples():
    yield Certificate.equality('waldschmidt/(1,1)', waldschmidt((1, 1), 5).value, F(1))
    yield Certificate.equality('waldschmidt/(2,3)', waldschmidt((2, 3), 5).value, F(3))
    yield Certificate.equality('waldschmidt/(1,1/4)', waldschmidt((1, F(1, 4)), 5).value, F(1))
    grid = [(F(a, 2), F(b, 3)) for a in (1, 2, 3) for b in (1, 2, 4, 5, 7)]
    for w in grid:
        result = waldschmidt(w, 30)
        ok = result.value == max(w) and result.certified_exact and result.degree == 1
        yield Certificate.holds(f'waldschmidt/closed_form/w=({format_weights(w)})', ok, value=result.value)
        yield Certificate.inequality(f'epsilon_below_omega/w=({format_weights(w)})', seshadri_model(w), result.value)


@check('positivity')
def model_stability():
    rng = random.Random(SEED + 6)
    for trial in range(10):
        w = (F(rng.randint(1, 6), rng.randint(1, 4)), F(rng.randint(1, 6), rng.randint(1, 4)))
        base = ToricSurface.projective_plane().star_subdivide(w)
        hyperplane = ToricDivisor.hyperplane(base)
        trace = ToricDivisor.from_function(base, lambda ray: dxi_on_ray(w, ray))
        expected = nef_threshold_model(hyperplane, trace)
        extra = [(rng.randint(-3, 5), rng.randint(-3, 5)) for _ in range(3)]
        extra = [r for r in extra if r != (0, 0)]
        finer = base.refine(extra)
        pulled = nef_threshold_model(hyperplane.pullback(finer), trace.pullback(finer))
        yield Certificate.equality(f'projection_formula/{trial}', pulled, expected, weights=w, rays=extra)
        direct = nef_threshold_model(
            ToricDivisor.hyperplane(finer), ToricDivisor.from_function(finer, lambda ray: dxi_on_ray(w, ray))
        )
        yield Certificate.equality(f'model_sufficiency/{trial}', direct, expected, weights=w, rays=extra)


@check('positivity')
def discontinuity_scan():
    report = semicontinuity_scan(parse_grid('family:10'), 'eps')
    epsilons = tuple(row.epsilon for row in report.rows)
    yield Certificate.equality('scan/family/epsilon', epsilons, tuple(F(1, k) for k in range(1, 11)))
    claims = [c.claim for c in report.certificates]
    yield Certificate.holds('scan/family/counterexample', 'epsilon_not_lower_semicontinuous' in claims)
    omega = semicontinuity_scan(parse_grid('family:10'), 'omega')
    yield Certificate.holds('scan/family/omega', omega.passed and all(r.omega == 1 for r in omega.rows))
    jump = semicontinuity_scan(parse_grid('family:10'), 'dxi')
    yield Certificate.holds('scan/family/dxi', jump.passed and all(r.dxi_u1 == 0 for r in jump.rows))
    sandwich = rational_sandwich(1, golden_quotients(), 8)
    ok = sandwich.lower_ratio < sandwich.upper_ratio and sandwich.omega[0] <= sandwich.omega[1]
    yield Certificate.holds('sandwich/golden', ok and sandwich.epsilon == (F(1), F(1)))


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    certificates: Tuple[Certificate, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    @property
    def failures(self) -> Tuple[Certificate, ...]:
        return tuple(c for c in self.certificates if not c.passed)

    def counts(self) -> Dict[str, int]:
        return {
            status: sum(1 for c in self.certificates if c.status == status)
            for status in (EXACT_PASS, BOUND_PASS, FAIL)
        }

    def summary(self) -> Dict:
        return {
            'suite': self.suite,
            'passed': self.passed,
            'counts': self.counts(),
            'failures': [c.to_json() for c in self.failures],
        }


def run_suite(name: str) -> VerificationReport:
    """Run one suite, or every suite for "all"."""
    if name == 'all':
        names = SUITE_NAMES
    elif name in SUITES:
        names = (name,)
    else:
        raise KeyError(f"Unknown suite '{name}'")
    certificates: List[Certificate] = []
    for suite in names:
        for fn in SUITES[suite]:
            produced = list(fn())
            logger.debug(f"{suite}.{fn.__name__}: {len(produced)} certificates")
            certificates.extend(produced)
    report = VerificationReport(name, tuple(certificates))
    logger.info(f"Suite {name}: {report.counts()}")
    return report
