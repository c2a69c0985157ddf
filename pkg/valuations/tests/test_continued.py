import itertools
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import strategies as st

from valuations.continued import (
    convergents,
    golden_quotients,
    lower_convergents,
    rational_quotients,
    sqrt_quotients,
    stream_value,
)
from valuations.exceptions import ParseError

F = Fraction


class ContinuedFractionTests(SimpleTestCase):

    def test_rational_quotients(self):
        self.assertEqual(rational_quotients(7, 3), (2, 3))
        self.assertEqual(rational_quotients(3, 2), (1, 2))
        self.assertEqual(rational_quotients(4, 1), (4,))
        with self.assertRaises(ParseError):
            rational_quotients(1, 0)

    def test_sqrt_quotients(self):
        self.assertEqual(list(itertools.islice(sqrt_quotients(2), 5)), [1, 2, 2, 2, 2])
        self.assertEqual(list(itertools.islice(sqrt_quotients(3), 5)), [1, 1, 2, 1, 2])
        with self.assertRaises(ParseError):
            next(sqrt_quotients(4))
        self.assertEqual(
            list(itertools.islice(convergents(sqrt_quotients(2)), 4)), [(1, 1), (3, 2), (7, 5), (17, 12)]
        )

    def test_golden_convergents(self):
        self.assertEqual(
            list(itertools.islice(convergents(golden_quotients()), 5)),
            [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)],
        )
        self.assertEqual(stream_value(golden_quotients(), 5), F(8, 5))

    def test_lower_convergents(self):
        self.assertEqual(
            list(itertools.islice(lower_convergents(golden_quotients()), 3)),
            [(F(1), False), (F(3, 2), False), (F(8, 5), False)],
        )
        self.assertEqual(
            list(lower_convergents(rational_quotients(7, 3))),
            [(F(2), False), (F(7, 3), True)],
        )

    def test_empty_stream(self):
        with self.assertRaises(ParseError):
            stream_value([], 3)

    @given(st.integers(min_value=1, max_value=500), st.integers(min_value=1, max_value=500))
    def test_expansion_recovers_the_ratio(self, p, q):
        quotients = rational_quotients(p, q)
        self.assertEqual(stream_value(quotients, len(quotients)), F(p, q))
        ratios = [ratio for ratio, _ in lower_convergents(quotients)]
        self.assertEqual(ratios, sorted(ratios))
        self.assertTrue(all(ratio <= F(p, q) for ratio in ratios))
