import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase, override_settings

from valuations.certificates import Certificate
from valuations.models import VerificationRun
from valuations.verify import VerificationReport

DATA = Path(settings.BASE_DIR) / 'data'


class ValcalcCommandTests(TestCase):

    def valcalc(self, *args):
        out = StringIO()
        call_command('valcalc', *args, stdout=out)
        return out.getvalue()

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            self.valcalc(*args)
        self.assertEqual(ctx.exception.returncode, code)

    def test_volume(self):
        self.assertEqual(self.valcalc('volume', '--cluster', str(DATA / 'w23.json')), '1/6\n')
        self.assertEqual(self.valcalc('volume', '--cluster', str(DATA / 'w23_valuation.json')), '1/6\n')

    def test_lct(self):
        self.assertEqual(self.valcalc('lct', '--ideal', str(DATA / 'cusp_ideal.json')), '5/6\n')

    def test_seshadri(self):
        self.assertEqual(self.valcalc('seshadri', '--weights', '1,1/3'), '1/3\n')
        self.assertEqual(self.valcalc('seshadri', '--weights', '2/1,3/1', '--via', 'limit'), '2/1\n')
        data = json.loads(self.valcalc('seshadri', '--weights', '2,3', '--via', 'both'))
        self.assertEqual(data, {'value': '2/1', 'model': '2/1', 'limit': '2/1', 'm_used': 6, 'routes_agree': True})

    def test_waldschmidt(self):
        self.assertEqual(self.valcalc('waldschmidt', '--weights', '2,3', '--deg-cap', '4'), '3/1\n')

    def test_ideal(self):
        data = json.loads(self.valcalc('ideal', '--weights', '2,3', '--m', '6'))
        self.assertEqual(data['generators'], [[3, 0], [2, 1], [0, 2]])
        self.assertEqual(data['colength'], 5)
        self.assertEqual(data['m'], '6/1')
        self.assertEqual(data['weights'], ['2/1', '3/1'])
        self.assertEqual(data['asymptotic_multiplier'], {'generators': [[1, 0], [0, 1]], 'stabilized_at': 1})

    def test_dxi_of_cluster(self):
        data = json.loads(self.valcalc('dxi', '--cluster', str(DATA / 'w23.json')))
        self.assertEqual(data['values'], ['2/1', '1/1', '1/1'])
        self.assertEqual(data['volume'], '1/6')
        self.assertEqual(data['dxi']['total_transform'], ['-1/3', '-1/6', '-1/6'])

    def test_dxi_of_weights(self):
        data = json.loads(self.valcalc('dxi', '--weights', '2,3'))
        self.assertEqual(
            data['rays'],
            [
                {'ray': [1, 1], 'coefficient': '-1/3'},
                {'ray': [1, 2], 'coefficient': '-1/2'},
                {'ray': [2, 3], 'coefficient': '-1/1'},
            ],
        )
        self.assertEqual(data['values'], ['2/1', '1/1', '1/1'])

    def test_dxi_at_boundary(self):
        data = json.loads(self.valcalc('dxi', '--weights', '1,0'))
        self.assertEqual(
            [row['coefficient'] for row in data['rays']], ['0/1', '-1/1', '-1/1']
        )
        self.assertNotIn('cluster', data)

    def test_scan_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'family.csv'
            summary = json.loads(self.valcalc(
                'scan', '--grid', 'family:4', '--invariant', 'eps', '--out', str(out)
            ))
            lines = out.read_text(encoding='utf-8').splitlines()
            self.assertTrue((Path(tmp) / 'family.summary.json').is_file())
        self.assertTrue(summary['passed'])
        self.assertEqual(len(lines), 5)
        self.assertEqual([line.split(',')[2] for line in lines[1:]], ['1/1', '1/2', '1/3', '1/4'])

    def test_scan_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'family.json'
            self.valcalc('scan', '--grid', 'family:3', '--invariant', 'omega', '--out', str(out))
            rows = json.loads(out.read_text(encoding='utf-8'))['rows']
        self.assertEqual([row['omega'] for row in rows], ['1/1'] * 3)
        self.assertEqual(rows[2]['w2'], '1/3')

    def test_verify_records_run(self):
        summary = json.loads(self.valcalc('verify', '--suite', 'positivity', '--record'))
        self.assertTrue(summary['passed'])
        run = VerificationRun.objects.get()
        self.assertEqual(run.suite, 'positivity')
        self.assertEqual(run.status, VerificationRun.STATUS_PASSED)
        self.assertEqual(run.certificates.count(), sum(summary['counts'].values()))

    def test_verify_all_suites_pass(self):
        summary = json.loads(self.valcalc('verify', '--suite', 'all'))
        self.assertTrue(summary['passed'])
        self.assertEqual(summary['counts']['FAIL'], 0)

    def test_verify_failure_exits_one(self):
        report = VerificationReport('monomial', (Certificate.equality('broken', 1, 2),))
        with mock.patch('valuations.management.commands.valcalc.run_suite', return_value=report):
            self.assertExitCode(1, 'verify', '--suite', 'monomial')
        self.assertFalse(VerificationRun.objects.exists())

    @override_settings(VALCALC_RECORD_RUNS=True)
    def test_record_runs_setting(self):
        report = VerificationReport('surface', (Certificate.equality('fine', 1, 1),))
        with mock.patch('valuations.management.commands.valcalc.run_suite', return_value=report):
            self.valcalc('verify', '--suite', 'surface')
        self.assertEqual(VerificationRun.objects.for_suite('surface').count(), 1)

    def test_invalid_input_exits_two(self):
        self.assertExitCode(2, 'seshadri', '--weights', '1,2,3')
        self.assertExitCode(2, 'seshadri', '--weights', '1,0', '--via', 'both')
        self.assertExitCode(2, 'ideal', '--weights', '1,0', '--m', '2')
        self.assertExitCode(2, 'ideal', '--weights', '2,3', '--m', '0')
        self.assertExitCode(2, 'ideal', '--weights', '0.5,1', '--m', '1')
        self.assertExitCode(2, 'volume', '--cluster', str(DATA / 'missing.json'))
        self.assertExitCode(2, 'waldschmidt', '--weights', '2,3', '--deg-cap', '0')
        self.assertExitCode(2, 'scan', '--grid', 'family:3', '--invariant', 'eps', '--out', 'scan.txt')
        self.assertExitCode(2, 'scan', '--grid', '0:1', '--invariant', 'eps', '--out', 'scan.csv')

    def test_malformed_document_exits_two(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'empty.json'
            path.write_text('[]', encoding='utf-8')
            self.assertExitCode(2, 'lct', '--ideal', str(path))
            self.assertExitCode(2, 'volume', '--cluster', str(path))

    @override_settings(VALCALC_ITER_CAP=0)
    def test_iteration_cap_exits_three(self):
        self.assertExitCode(3, 'ideal', '--weights', '2,3', '--m', '6')
