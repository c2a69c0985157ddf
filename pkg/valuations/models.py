"""
Recorded verification runs.
"""

import uuid

from django.db import models, transaction
from django.utils import timezone

from .certificates import FAIL, STATUS_CHOICES as CERTIFICATE_STATUS_CHOICES


class VerificationRunQuerySet(models.QuerySet):
    """Custom queryset for VerificationRun model."""

    def for_suite(self, suite: str):
        """Filter runs of one suite."""
        return self.filter(suite=suite)

    def failed(self):
        """Filter runs with at least one failing certificate."""
        return self.filter(status=VerificationRun.STATUS_FAILED)

    def with_certificates(self):
        return self.prefetch_related('certificates')


class VerificationRun(models.Model):
    """
    One execution of a verification suite and its outcome.
    """

    STATUS_RUNNING = 'running'
    STATUS_PASSED = 'passed'
    STATUS_FAILED = 'failed'

    STATUS_CHOICES = [
        (STATUS_RUNNING, 'Running'),
        (STATUS_PASSED, 'Passed'),
        (STATUS_FAILED, 'Failed'),
    ]

    id = models.UUIDField(
        primary_key=True,
        default=uuid.uuid4,
        editable=False,
        help_text="Unique identifier for the run"
    )
    suite = models.CharField(
        max_length=20,
        help_text="Suite name: all, monomial, surface or positivity"
    )
    status = models.CharField(
        max_length=20,
        choices=STATUS_CHOICES,
        default=STATUS_RUNNING,
        help_text="Outcome of the run"
    )

    started_at = models.DateTimeField(
        auto_now_add=True,
        help_text="When the run started"
    )
    finished_at = models.DateTimeField(
        null=True,
        blank=True,
        help_text="When the last certificate was stored"
    )

    summary = models.JSONField(
        blank=True,
        null=True,
        help_text="Certificate counts per status"
    )

    objects = VerificationRunQuerySet.as_manager()

    class Meta:
        ordering = ['-started_at']
        indexes = [
            models.Index(fields=['suite', '-started_at'], name='valuations__suite_8b1f3e_idx'),
            models.Index(fields=['status'], name='valuations__status_4c9a21_idx'),
        ]

    def __str__(self) -> str:
        return f"{self.suite} ({self.get_status_display()})"

    @property
    def is_finished(self) -> bool:
        return self.status != self.STATUS_RUNNING

    @property
    def failure_count(self) -> int:
        return self.certificates.filter(status=FAIL).count()

    @classmethod
    def record(cls, report) -> 'VerificationRun':
        """Store a VerificationReport with all of its certificates."""
        with transaction.atomic():
            run = cls.objects.create(suite=report.suite)
            CertificateRecord.objects.bulk_create([
                CertificateRecord(
                    run=run,
                    claim=certificate.claim,
                    status=certificate.status,
                    witness=certificate.to_json()['witness'],
                )
                for certificate in report.certificates
            ])
            run.status = cls.STATUS_PASSED if report.passed else cls.STATUS_FAILED
            run.summary = report.counts()
            run.finished_at = timezone.now()
            run.save(update_fields=['status', 'summary', 'finished_at'])
        return run


class CertificateRecordQuerySet(models.QuerySet):

    def failed(self):
        return self.filter(status=FAIL)


class CertificateRecord(models.Model):
    """A single certificate of a recorded run."""

    run = models.ForeignKey(
        VerificationRun,
        on_delete=models.CASCADE,
        related_name='certificates',
        help_text="Run this certificate belongs to"
    )
    claim = models.CharField(
        max_length=200,
        help_text="Claim id, e.g. hd_length/brute_force/w=(2,3),m=6"
    )
    status = models.CharField(
        max_length=20,
        choices=CERTIFICATE_STATUS_CHOICES,
        help_text="EXACT_PASS, BOUND_PASS or FAIL"
    )
    witness = models.JSONField(
        default=dict,
        blank=True,
        help_text="Inputs and both sides of the checked relation, rationals as p/q"
    )

    objects = CertificateRecordQuerySet.as_manager()

    class Meta:
        ordering = ['run', 'id']
        indexes = [
            models.Index(fields=['run', 'status'], name='valuations__run_id_7d2e55_idx'),
            models.Index(fields=['claim'], name='valuations__claim_3f6b90_idx'),
        ]

    def __str__(self) -> str:
        return f"{self.claim}: {self.status}"
