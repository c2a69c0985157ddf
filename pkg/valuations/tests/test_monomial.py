import itertools
from fractions import Fraction

import sympy
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.solvers.simplex import lpmax

from valuations.exceptions import InvalidIdealError, InvalidWeightsError, IterationCapExceeded
from valuations.monomial import (
    WeightVector,
    arnold,
    arnold_of_filtration,
    arnold_sequence,
    asymptotic_multiplier_divisor,
    asymptotic_multiplier_ideal,
    boundary_jump,
    dxi_boundary_coefficient,
    dxi_coefficient,
    lct,
    log_discrepancy,
    monomial_value,
    multiplier_ideal,
    stabilizing_multiplier,
    valuation_ideal,
    z_divisor_coefficient,
)
from valuations.polyhedra import MonomialIdeal
from valuations.rational import INF

from .strategies import ideals, positive_rationals, weights

F = Fraction
CUSP = MonomialIdeal.of([(2, 0), (0, 3)])


def in_scaled_interior(a: MonomialIdeal, scale, point) -> bool:
    """Whether point - δ(1, ..., 1) lies in scale · Newt(a) for some δ > 0, by exact LP."""
    lambdas = sympy.symbols(f'l1:{len(a.gens) + 1}')
    delta = sympy.Symbol('delta')
    scale = sympy.Rational(scale.numerator, scale.denominator)
    constraints = [x >= 0 for x in lambdas] + [sympy.Eq(sum(lambdas), 1)]
    for i in range(a.c):
        constraints.append(scale * sum(x * g[i] for x, g in zip(lambdas, a.gens)) + delta <= point[i])
    value, _ = lpmax(delta, constraints)
    return bool(value > 0)


class WeightVectorTests(SimpleTestCase):

    def test_parse(self):
        w = WeightVector.parse('2/1,3')
        self.assertEqual(w.entries, (F(2), F(3)))
        self.assertTrue(w.is_interior())
        self.assertEqual(str(w), '2/1,3/1')

    def test_infinite_entry(self):
        w = WeightVector.parse('1,inf')
        self.assertFalse(w.is_finite())
        self.assertFalse(w.is_interior())

    def test_rejects_degenerate_weights(self):
        for entries in ((), (-1, 2), (0, 0), (INF, INF)):
            with self.subTest(entries=entries):
                with self.assertRaises(InvalidWeightsError):
                    WeightVector(entries)

    def test_boundary_weights(self):
        self.assertEqual(WeightVector((0, 2, 0)).zero_indices(), (0, 2))


class MonomialValuationTests(SimpleTestCase):

    def test_monomial_value(self):
        self.assertEqual(monomial_value((1, 2), [(0, 1), (3, 0)]), F(2))
        self.assertEqual(monomial_value((1, 1), [(0, 0), (1, 0)]), F(0))
        self.assertEqual(monomial_value((1, INF), [(0, 1)]), INF)
        self.assertEqual(monomial_value((1, INF), [(0, 1), (2, 0)]), F(2))
        with self.assertRaises(InvalidIdealError):
            monomial_value((1, 1), [])

    def test_valuation_ideal(self):
        self.assertEqual(valuation_ideal((1, 1), 2), MonomialIdeal.of([(2, 0), (1, 1), (0, 2)]))
        self.assertEqual(valuation_ideal((1, 2), 2), MonomialIdeal.of([(2, 0), (0, 1)]))
        self.assertEqual(valuation_ideal((2, 3), 6), MonomialIdeal.of([(3, 0), (2, 1), (0, 2)]))
        self.assertEqual(valuation_ideal((2, 3), 0), MonomialIdeal.unit(2))

    def test_valuation_ideal_needs_interior_weights(self):
        with self.assertRaises(InvalidWeightsError):
            valuation_ideal((1, 0), 2)

    @given(weights(), positive_rationals)
    def test_valuation_ideal_membership(self, w, m):
        ideal = valuation_ideal(w, m)
        for g in ideal.gens:
            self.assertGreaterEqual(monomial_value(w, [g]), m)
            for i, e in enumerate(g):
                if e:
                    smaller = g[:i] + (e - 1,) + g[i + 1:]
                    self.assertLess(monomial_value(w, [smaller]), m)

    @given(weights(), positive_rationals, positive_rationals)
    def test_valuation_ideals_multiply(self, w, m, n):
        product = valuation_ideal(w, m) * valuation_ideal(w, n)
        self.assertTrue(product.is_subideal(valuation_ideal(w, m + n)))


class DxiTests(SimpleTestCase):

    def test_dxi_coefficient(self):
        self.assertEqual(dxi_coefficient((1, 1), (1, 1)), F(-1))
        self.assertEqual(dxi_coefficient((2, 3), (1, 1)), F(-1, 3))
        self.assertEqual(dxi_coefficient((1, 5), (1, 0)), F(0))
        self.assertEqual(dxi_coefficient((1, INF), (1, 1)), F(0))

    def test_rays_must_be_primitive(self):
        for u in ((2, 2), (0, 0), (-1, 1), (1, 1, 1)):
            with self.subTest(u=u):
                with self.assertRaises(InvalidWeightsError):
                    dxi_coefficient((1, 1), u)

    def test_zero_weight_needs_boundary_formula(self):
        with self.assertRaises(InvalidWeightsError):
            dxi_coefficient((1, 0), (1, 1))
        self.assertEqual(dxi_boundary_coefficient((1, 0), (1, 1)), F(-1))

    def test_boundary_jump(self):
        cases = [
            ((1, 0), (F(0), F(-1))),
            ((2, 3, 0), (F(0), F(-1, 3))),
            ((0, F(5, 7)), (F(0), F(-7, 5))),
            ((0, 4, 5), (F(0), F(-1, 5))),
            ((F(3, 2), 0, F(1, 3)), (F(0), F(-2, 3))),
        ]
        for w, expected in cases:
            with self.subTest(w=w):
                self.assertEqual(tuple(boundary_jump(w)), expected)

    def test_boundary_jump_at_a_given_ray(self):
        jump = boundary_jump((1, 0), (1, 1))
        self.assertEqual(jump.limit_from_interior, F(-1))
        self.assertEqual(jump.value_at_boundary, F(-1))

    def test_boundary_jump_needs_a_zero_weight(self):
        with self.assertRaises(InvalidWeightsError):
            boundary_jump((1, 2))

    @given(weights(), st.sampled_from([(1, 0), (0, 1), (1, 1), (1, 2), (3, 1)]), positive_rationals)
    def test_dxi_is_homogeneous(self, w, u, scale):
        scaled = tuple(scale * x for x in w)
        self.assertEqual(dxi_coefficient(scaled, u), dxi_coefficient(w, u) / scale)

    @given(weights(), st.sampled_from([(1, 1), (1, 2), (2, 1)]))
    def test_valuation_ideals_bound_dxi(self, w, u):
        m = 24
        self.assertLessEqual(z_divisor_coefficient(valuation_ideal(w, m), u) / m, dxi_coefficient(w, u))


class MultiplierIdealTests(SimpleTestCase):

    def test_cusp(self):
        self.assertEqual(lct(CUSP), F(5, 6))
        self.assertEqual(arnold(CUSP), F(6, 5))
        self.assertEqual(multiplier_ideal(CUSP, F(5, 6)), MonomialIdeal.maximal(2))
        self.assertEqual(multiplier_ideal(CUSP, F(1, 2)), MonomialIdeal.unit(2))

    def test_lct_examples(self):
        for c in (1, 2, 3):
            self.assertEqual(lct(MonomialIdeal.maximal(c)), F(c))
        for k in range(1, 6):
            self.assertEqual(lct(MonomialIdeal.of([(k,)])), F(1, k))
            self.assertEqual(lct(MonomialIdeal.of([(k, 0)])), F(1, k))
        self.assertEqual(lct(MonomialIdeal.unit(2)), INF)
        self.assertEqual(arnold(MonomialIdeal.unit(2)), F(0))

    def test_exponent_must_be_positive(self):
        with self.assertRaises(InvalidIdealError):
            multiplier_ideal(CUSP, 0)

    @given(ideals(2), st.integers(min_value=1, max_value=4))
    def test_lct_is_homogeneous(self, a, k):
        if a.is_unit():
            return
        self.assertEqual(lct(a.power(k)), lct(a) / k)

    @given(ideals(2), st.fractions(min_value=F(1, 4), max_value=1, max_denominator=4))
    def test_ideal_lies_in_its_multiplier_ideal(self, a, exponent):
        self.assertTrue(a.is_subideal(multiplier_ideal(a, exponent)))

    @given(
        st.sampled_from([2, 3]).flatmap(lambda c: ideals(c, max_gens=4, max_exponent=3)),
        st.sampled_from([2, 3]),
        st.fractions(min_value=F(1, 4), max_value=1, max_denominator=4),
    )
    def test_subadditivity(self, a, power, exponent):
        self.assertTrue(
            multiplier_ideal(a, power * exponent).is_subideal(multiplier_ideal(a, exponent).power(power))
        )

    @settings(max_examples=20)
    @given(
        st.sampled_from([2, 3]).flatmap(lambda c: ideals(c, max_gens=3, max_exponent=3)),
        st.sampled_from([F(1, 2), F(1), F(3, 2)]),
    )
    def test_multiplier_ideal_matches_interior_points(self, a, exponent):
        ideal = multiplier_ideal(a, exponent)
        box = range(5) if a.c == 2 else range(3)
        for alpha in itertools.product(box, repeat=a.c):
            shifted = tuple(x + 1 for x in alpha)
            self.assertEqual(ideal.contains(alpha), in_scaled_interior(a, exponent, shifted), alpha)


class FiltrationTests(SimpleTestCase):

    def test_log_discrepancy(self):
        self.assertEqual(log_discrepancy((2, 3)), F(5))
        self.assertEqual(arnold_of_filtration((1, 1)), F(1, 2))

    def test_arnold_sequence_on_lattice(self):
        self.assertEqual(arnold_sequence((2, 3), [6, 12, 18]), (F(1, 5),) * 3)

    def test_stabilizing_multiplier(self):
        self.assertEqual(stabilizing_multiplier((2, 3), 1), 6)
        self.assertEqual(stabilizing_multiplier((F(1, 2), 1), F(3, 2)), 2)

    def test_asymptotic_multiplier_ideal(self):
        result = asymptotic_multiplier_ideal((2, 3), 6)
        self.assertEqual(result.ideal, MonomialIdeal.maximal(2))
        self.assertEqual(asymptotic_multiplier_divisor((1, 1), 2, (1, 1)), F(-1))
        self.assertEqual(asymptotic_multiplier_ideal((1, 1), 0), (MonomialIdeal.unit(2), 1))

    @override_settings(VALCALC_ITER_CAP=0)
    def test_asymptotic_multiplier_ideal_respects_cap(self):
        with self.assertRaises(IterationCapExceeded):
            asymptotic_multiplier_ideal((2, 3), 6)

    @given(
        st.sampled_from([(1, 1), (1, 2), (2, 3), (F(1, 2), 1), (3, 5)]),
        st.integers(min_value=1, max_value=8),
        st.sampled_from([(1, 0), (0, 1), (1, 1), (1, 2)]),
    )
    def test_sandwich(self, w, m, u):
        lower = z_divisor_coefficient(valuation_ideal(w, m), u)
        upper = asymptotic_multiplier_divisor(w, m, u)
        self.assertLessEqual(lower, m * dxi_coefficient(w, u))
        self.assertLessEqual(m * dxi_coefficient(w, u), upper)
        self.assertLessEqual(upper, 0)

    @given(
        weights(),
        st.integers(min_value=1, max_value=20),
        st.sampled_from([(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (2, 3)]),
    )
    def test_normalized_z_converges_at_rate_one_over_m(self, w, m, u):
        z = z_divisor_coefficient(valuation_ideal(w, m), u)
        self.assertLessEqual(z / m, dxi_coefficient(w, u))
        self.assertLessEqual(abs(z / m - dxi_coefficient(w, u)), F(max(u), m))
