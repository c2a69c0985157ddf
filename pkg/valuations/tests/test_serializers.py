import json
import tempfile
from fractions import Fraction
from pathlib import Path

from django.conf import settings
from django.test import SimpleTestCase
from hypothesis import given

from valuations.certificates import BOUND_PASS, EXACT_PASS, FAIL, Certificate
from valuations.cluster import Cluster, ExceptionalDivisor
from valuations.exceptions import InvalidClusterError, ParseError
from valuations.polyhedra import MonomialIdeal
from valuations.rational import INF, format_rational, parse_rational, parse_weights, primitive
from valuations.serializers import (
    cluster_to_json,
    dumps,
    load_json,
    parse_cluster,
    parse_germ,
    parse_ideal,
    parse_valuation,
    rows_to_csv,
    to_jsonable,
    valuation_to_json,
)
from valuations.surface import SurfaceValuation, dxi, ord_dxi, volume

from .strategies import clusters, ideals, positive_rationals

F = Fraction
DATA = Path(settings.BASE_DIR) / 'data'


class RationalTests(SimpleTestCase):

    def test_format(self):
        self.assertEqual(format_rational(F(6, 4)), '3/2')
        self.assertEqual(format_rational(F(-2, 6)), '-1/3')
        self.assertEqual(format_rational(5), '5/1')
        self.assertEqual(format_rational(INF), 'inf')

    def test_parse(self):
        self.assertEqual(parse_rational('3/6'), F(1, 2))
        self.assertEqual(parse_rational('4'), F(4))
        self.assertEqual(parse_rational('inf'), INF)
        for text in ('0.5', '1e3', '', '1/0', 'x'):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_rational(text)

    def test_parse_weights(self):
        self.assertEqual(parse_weights('2/1,3/1'), (F(2), F(3)))
        with self.assertRaises(ParseError):
            parse_weights('1,,2')

    def test_primitive(self):
        self.assertEqual(primitive((F(1, 2), F(3, 4))), (2, 3))
        self.assertEqual(primitive((4, 6)), (2, 3))
        with self.assertRaises(ParseError):
            primitive((0, 0))


class DocumentTests(SimpleTestCase):

    def test_bare_cluster_document(self):
        v = parse_valuation(load_json(DATA / 'w23.json'))
        self.assertEqual(v.values, (F(2), F(1), F(1)))
        self.assertEqual(format_rational(volume(v)), '1/6')

    def test_valuation_document(self):
        v = parse_valuation(load_json(DATA / 'w23_valuation.json'))
        self.assertEqual(v.cluster, Cluster.from_lists([[], [1], [2, 1]]))
        self.assertEqual(v.normalization, F(1))

    def test_normalized_valuation(self):
        doc = {'cluster': {'points': [{'proximate_to': []}]}, 'normalization': '3/2'}
        self.assertEqual(parse_valuation(doc).values, (F(3, 2),))
        doc['normalization'] = '0/1'
        with self.assertRaises(ParseError):
            parse_valuation(doc)

    def test_malformed_clusters(self):
        with self.assertRaises(ParseError):
            parse_cluster({'points': [{'prox': []}]})
        with self.assertRaises(ParseError):
            parse_cluster([[], [1]])
        with self.assertRaises(InvalidClusterError):
            parse_cluster({'points': [{'proximate_to': [1]}]})

    def test_ideal_document(self):
        ideal = parse_ideal(load_json(DATA / 'cusp_ideal.json'))
        self.assertEqual(ideal, MonomialIdeal.of([(2, 0), (0, 3)]))
        self.assertEqual(parse_ideal([[1, 0], [0, 1]]), MonomialIdeal.maximal(2))
        for doc in ([], {'generators': 'x'}, [['a', 1]]):
            with self.subTest(doc=doc):
                with self.assertRaises(ParseError):
                    parse_ideal(doc)

    def test_germ_document(self):
        mults, residual = parse_germ(load_json(DATA / 'cusp_germ.json'))
        self.assertEqual((mults, residual), ([1, 1, 0], F(0)))
        v = parse_valuation(load_json(DATA / 'w23.json'))
        self.assertEqual(ord_dxi(v, mults, residual), F(3))
        with self.assertRaises(ParseError):
            parse_germ({'residual': '1/2'})

    def test_missing_file(self):
        with self.assertRaises(ParseError):
            load_json(DATA / 'missing.json')

    def test_invalid_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'broken.json'
            path.write_text('{"points": [', encoding='utf-8')
            with self.assertRaises(ParseError):
                load_json(path)


class JsonOutputTests(SimpleTestCase):

    def test_rationals_are_strings(self):
        data = json.loads(dumps({'value': F(5, 6), 'bound': INF, 'count': 3, 'flag': True}))
        self.assertEqual(data, {'value': '5/6', 'bound': 'inf', 'count': 3, 'flag': True})

    def test_floats_are_refused(self):
        with self.assertRaises(ParseError):
            to_jsonable(0.5)

    def test_library_objects(self):
        cluster = Cluster.chain(2)
        self.assertEqual(
            to_jsonable(cluster), {'points': [{'proximate_to': []}, {'proximate_to': [1]}]}
        )
        self.assertEqual(
            to_jsonable(ExceptionalDivisor.prime(cluster, 1)),
            {'basis': 'prime', 'coeffs': ['1/1', '0/1']},
        )
        self.assertEqual(to_jsonable(MonomialIdeal.maximal(2)), [[1, 0], [0, 1]])
        trace = to_jsonable(dxi(SurfaceValuation.divisorial(cluster)))
        self.assertEqual(trace['total_transform'], ['-1/2', '-1/2'])
        self.assertEqual(trace['prime'], ['-1/2', '-1/1'])
        self.assertNotIn('closed_form_agrees', trace)

    def test_certificates(self):
        self.assertEqual(Certificate.equality('c', F(1), F(1)).status, EXACT_PASS)
        self.assertEqual(Certificate.equality('c', F(1), F(2)).status, FAIL)
        self.assertEqual(Certificate.inequality('c', F(1), F(2)).status, BOUND_PASS)
        self.assertFalse(Certificate.inequality('c', F(3), F(2)).passed)
        data = Certificate.equality('volume', F(1, 6), F(1, 6), cluster=Cluster.chain(1)).to_json()
        self.assertEqual(data['value'], '1/6')
        self.assertEqual(data['witness']['left'], '1/6')
        self.assertEqual(data['witness']['cluster'], {'points': [{'proximate_to': []}]})

    def test_csv_cells(self):
        text = rows_to_csv(('a', 'b', 'c'), [(F(1, 2), None, 'TRIVIAL'), (3, INF, F(-1))])
        self.assertEqual(text, 'a,b,c\n1/2,,TRIVIAL\n3,inf,-1/1\n')


class DocumentRoundTripTests(SimpleTestCase):

    @given(clusters())
    def test_cluster_documents(self, cluster):
        self.assertEqual(parse_cluster(json.loads(dumps(cluster_to_json(cluster)))), cluster)

    @given(clusters(), positive_rationals)
    def test_valuation_documents(self, cluster, normalization):
        v = SurfaceValuation.divisorial(cluster, normalization)
        self.assertEqual(parse_valuation(json.loads(dumps(valuation_to_json(v)))), v)

    @given(ideals(2) | ideals(3))
    def test_ideal_documents(self, ideal):
        self.assertEqual(parse_ideal(json.loads(dumps(ideal.to_json()))), ideal)
