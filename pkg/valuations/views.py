"""
Read-only JSON endpoints for recorded verification runs.
"""

import logging

from django.http import HttpRequest, JsonResponse
from django.shortcuts import get_object_or_404
from django.views.decorators.http import require_GET

from .models import VerificationRun

logger = logging.getLogger(__name__)


def _run_summary(run: VerificationRun) -> dict:
    return {
        'id': str(run.id),
        'suite': run.suite,
        'status': run.status,
        'started_at': run.started_at.isoformat(),
        'finished_at': run.finished_at.isoformat() if run.finished_at else None,
        'summary': run.summary,
    }


@require_GET
def run_list(request: HttpRequest) -> JsonResponse:
    """
    Recorded runs, newest first. ``?suite=`` and ``?failed=1`` filter.
    """
    runs = VerificationRun.objects.all()
    suite = request.GET.get('suite')
    if suite:
        runs = runs.for_suite(suite)
    if request.GET.get('failed') in ('1', 'true'):
        runs = runs.failed()
    return JsonResponse({'runs': [_run_summary(run) for run in runs]})


@require_GET
def run_detail(request: HttpRequest, run_id: str) -> JsonResponse:
    """One run with its certificates; ``?failed=1`` keeps only the failures."""
    run = get_object_or_404(VerificationRun, id=run_id)
    certificates = run.certificates.all()
    if request.GET.get('failed') in ('1', 'true'):
        certificates = certificates.failed()
    data = _run_summary(run)
    data['certificates'] = [
        {'claim': c.claim, 'status': c.status, 'witness': c.witness}
        for c in certificates
    ]
    logger.debug(f"Run {run_id} served with {len(data['certificates'])} certificates")
    return JsonResponse(data)
