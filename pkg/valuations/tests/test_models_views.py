import uuid
from fractions import Fraction

from django.contrib import admin
from django.test import TestCase

from valuations.certificates import BOUND_PASS, EXACT_PASS, FAIL, Certificate
from valuations.models import CertificateRecord, VerificationRun
from valuations.verify import VerificationReport


def make_report(suite='monomial', failing=True):
    certificates = [
        Certificate.equality('lct/cusp', Fraction(5, 6), Fraction(5, 6)),
        Certificate.inequality('dxi/bound', Fraction(1, 3), Fraction(1, 2)),
    ]
    if failing:
        certificates.append(Certificate.equality('volume/w=(2,3)', Fraction(1, 2), Fraction(1, 3)))
    return VerificationReport(suite, tuple(certificates))


class VerificationRunModelTests(TestCase):

    def test_record_failed_run(self):
        run = VerificationRun.record(make_report())
        run.refresh_from_db()
        self.assertEqual(run.status, VerificationRun.STATUS_FAILED)
        self.assertEqual(run.summary, {EXACT_PASS: 1, BOUND_PASS: 1, FAIL: 1})
        self.assertEqual(run.failure_count, 1)
        self.assertTrue(run.is_finished)
        self.assertIsNotNone(run.finished_at)
        self.assertEqual(str(run), 'monomial (Failed)')

    def test_record_passed_run(self):
        run = VerificationRun.record(make_report('surface', failing=False))
        self.assertEqual(run.status, VerificationRun.STATUS_PASSED)
        self.assertEqual(run.certificates.count(), 2)
        self.assertEqual(run.failure_count, 0)

    def test_querysets(self):
        failed = VerificationRun.record(make_report())
        VerificationRun.record(make_report('surface', failing=False))
        self.assertEqual(list(VerificationRun.objects.failed()), [failed])
        self.assertEqual(VerificationRun.objects.for_suite('surface').count(), 1)
        self.assertEqual(VerificationRun.objects.with_certificates().count(), 2)

        record = CertificateRecord.objects.failed().get()
        self.assertEqual(record.claim, 'volume/w=(2,3)')
        self.assertEqual(record.witness, {'left': '1/2', 'right': '1/3'})
        self.assertEqual(str(record), f'volume/w=(2,3): {FAIL}')

    def test_unfinished_run(self):
        run = VerificationRun.objects.create(suite='positivity')
        self.assertFalse(run.is_finished)
        self.assertEqual(run.failure_count, 0)

    def test_admin_registration(self):
        self.assertTrue(admin.site.is_registered(VerificationRun))
        self.assertTrue(admin.site.is_registered(CertificateRecord))


class RunViewTests(TestCase):

    def setUp(self):
        self.failed = VerificationRun.record(make_report())
        self.passed = VerificationRun.record(make_report('surface', failing=False))

    def test_run_list(self):
        response = self.client.get('/runs/')
        self.assertEqual(response.status_code, 200)
        runs = response.json()['runs']
        self.assertEqual({run['id'] for run in runs}, {str(self.failed.id), str(self.passed.id)})

    def test_run_list_filters(self):
        runs = self.client.get('/runs/', {'failed': '1'}).json()['runs']
        self.assertEqual([run['id'] for run in runs], [str(self.failed.id)])
        self.assertEqual(runs[0]['summary'][FAIL], 1)
        runs = self.client.get('/runs/', {'suite': 'surface'}).json()['runs']
        self.assertEqual([run['status'] for run in runs], [VerificationRun.STATUS_PASSED])

    def test_run_detail(self):
        data = self.client.get(f'/runs/{self.failed.id}/').json()
        self.assertEqual(data['suite'], 'monomial')
        self.assertEqual(len(data['certificates']), 3)
        data = self.client.get(f'/runs/{self.failed.id}/', {'failed': 'true'}).json()
        self.assertEqual(
            data['certificates'],
            [{'claim': 'volume/w=(2,3)', 'status': FAIL, 'witness': {'left': '1/2', 'right': '1/3'}}],
        )

    def test_unknown_run(self):
        self.assertEqual(self.client.get(f'/runs/{uuid.uuid4()}/').status_code, 404)

    def test_read_only(self):
        self.assertEqual(self.client.post('/runs/').status_code, 405)
