from fractions import Fraction

from django.test import SimpleTestCase

from valuations.certificates import BOUND_PASS, EXACT_PASS, FAIL, Certificate
from valuations.verify import SUITE_NAMES, SUITES, VerificationReport, run_suite


class SuiteTests(SimpleTestCase):
    """Each suite is run once; its certificates must all pass."""

    def assertSuitePasses(self, name):
        report = run_suite(name)
        self.assertTrue(report.certificates)
        self.assertEqual([c.to_json() for c in report.failures], [])
        self.assertTrue(report.passed)
        return report

    def test_monomial_suite(self):
        report = self.assertSuitePasses('monomial')
        self.assertTrue(any(c.status == BOUND_PASS for c in report.certificates))

    def test_surface_suite(self):
        report = self.assertSuitePasses('surface')
        claims = [c.claim for c in report.certificates]
        self.assertIn('hd_length/brute_force/w=(2,3),m=6', claims)
        self.assertIn('ord_dxi/sample_germ', claims)

    def test_positivity_suite(self):
        self.assertSuitePasses('positivity')

    def test_unknown_suite(self):
        with self.assertRaises(KeyError):
            run_suite('toric')

    def test_every_suite_has_checks(self):
        for name in SUITE_NAMES:
            self.assertTrue(SUITES[name], name)


class VerificationReportTests(SimpleTestCase):

    def setUp(self):
        self.report = VerificationReport('monomial', (
            Certificate.equality('a', Fraction(1), Fraction(1)),
            Certificate.inequality('b', 1, 2),
            Certificate.equality('c', Fraction(1, 2), Fraction(1, 3)),
        ))

    def test_counts(self):
        self.assertEqual(self.report.counts(), {EXACT_PASS: 1, BOUND_PASS: 1, FAIL: 1})
        self.assertFalse(self.report.passed)
        self.assertEqual([c.claim for c in self.report.failures], ['c'])

    def test_summary(self):
        summary = self.report.summary()
        self.assertEqual(summary['suite'], 'monomial')
        self.assertFalse(summary['passed'])
        self.assertEqual(summary['failures'][0]['witness'], {'left': '1/2', 'right': '1/3'})
