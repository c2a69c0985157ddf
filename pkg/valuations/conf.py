"""
Library settings with defaults.

The values come from ``django.conf.settings`` when a Django process is
configured, and from the environment otherwise, so the computational modules
can be imported on their own.
"""

import os
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'VALCALC_ITER_CAP': None,
    'VALCALC_UNLOADING_CAP_FACTOR': 10,
    'VALCALC_MAX_MULTIPLIER_DIM': 3,
    'VALCALC_CURVE_FAMILY_DEGREE': 12,
    'VALCALC_RECORD_RUNS': False,
    'VALCALC_DATA_DIR': Path(__file__).resolve().parent.parent / 'data',
}


def get_setting(name: str):
    try:
        return getattr(settings, name, DEFAULTS[name])
    except ImproperlyConfigured:
        if name == 'VALCALC_ITER_CAP':
            raw = os.environ.get('VALCALC_ITER_CAP')
            return int(raw) if raw else None
        return DEFAULTS[name]


def iteration_cap(default: int) -> int:
    """The global override if set, else the caller's own default."""
    override = get_setting('VALCALC_ITER_CAP')
    if override is not None:
        return int(override)
    return default
