"""
valcalc: exact valuation and positivity computations from the command line.

stdout carries only the result of the subcommand; logging goes to the
handlers configured in settings. Exit codes: 0 success, 1 verification
failure, 2 malformed input, 3 iteration cap reached.
"""

import itertools
import logging

from django.core.management.base import BaseCommand, CommandError

from valuations.conf import get_setting
from valuations.exceptions import IterationCapExceeded, ValcalcError
from valuations.forms import RunConfigForm
from valuations.models import VerificationRun
from valuations.monomial import (
    asymptotic_multiplier_ideal,
    dxi_boundary_coefficient,
    dxi_coefficient,
    lct,
    valuation_ideal,
)
from valuations.rational import format_rational
from valuations.scan import CSV_HEADER, scan_to_csv, semicontinuity_scan, summary_path
from valuations.serializers import (
    dumps,
    load_json,
    parse_ideal,
    parse_valuation,
    trace_to_json,
    write_text,
)
from valuations.surface import dxi, toric_cluster, volume
from valuations.toric import seshadri, waldschmidt
from valuations.verify import run_suite

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_CAP = 3

FORM_FIELDS = (
    'weights', 'cluster', 'ideal', 'm', 'via', 'deg_cap',
    'grid', 'invariant', 'out', 'suite', 'record',
)


def _indicator_rays(c: int):
    """The rays Σ_{i in S} e_i for nonempty S, in lexicographic order."""
    return [u for u in itertools.product((0, 1), repeat=c) if any(u)]


class Command(BaseCommand):
    help = 'Exact computations with valuations, b-divisors and local positivity'

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)

        dxi_parser = subparsers.add_parser('dxi', help='D_ξ of a monomial or divisorial valuation')
        source = dxi_parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--weights', help='Comma-separated rational weights')
        source.add_argument('--cluster', help='Cluster or valuation JSON file')

        ideal_parser = subparsers.add_parser('ideal', help='Valuation ideal a_m of a monomial valuation')
        ideal_parser.add_argument('--weights', required=True)
        ideal_parser.add_argument('--m', required=True, help='Rational threshold')

        lct_parser = subparsers.add_parser('lct', help='Log canonical threshold of a monomial ideal')
        lct_parser.add_argument('--ideal', required=True, help='Ideal JSON file')

        volume_parser = subparsers.add_parser('volume', help='Volume of a divisorial valuation')
        volume_parser.add_argument('--cluster', required=True)

        seshadri_parser = subparsers.add_parser('seshadri', help='Seshadri constant of O(1) on P²')
        seshadri_parser.add_argument('--weights', required=True)
        seshadri_parser.add_argument('--via', choices=['limit', 'model', 'both'], default='model')

        waldschmidt_parser = subparsers.add_parser('waldschmidt', help='Asymptotic order of vanishing')
        waldschmidt_parser.add_argument('--weights', required=True)
        waldschmidt_parser.add_argument('--deg-cap', type=int, required=True)

        scan_parser = subparsers.add_parser('scan', help='Semicontinuity scan over a grid of weights')
        scan_parser.add_argument('--grid', required=True)
        scan_parser.add_argument('--invariant', choices=['eps', 'omega', 'dxi'], required=True)
        scan_parser.add_argument('--out', required=True)

        verify_parser = subparsers.add_parser('verify', help='Run a certificate suite')
        verify_parser.add_argument(
            '--suite', choices=['all', 'monomial', 'surface', 'positivity'], default='all'
        )
        verify_parser.add_argument('--record', action='store_true', help='Store the run in the database')

    def handle(self, *args, **options):
        command = options['subcommand']
        data = {'command': command}
        for name in FORM_FIELDS:
            value = options.get(name)
            if value is not None:
                data[name] = value
        form = RunConfigForm(data)
        if not form.is_valid():
            errors = '; '.join(str(e) for errors in form.errors.values() for e in errors)
            logger.warning(f"Invalid valcalc {command} invocation: {errors}")
            raise CommandError(errors, returncode=EXIT_INVALID)

        logger.info(f"valcalc {command} started")
        try:
            output, failed = getattr(self, f'run_{command}')(form.cleaned_data)
        except IterationCapExceeded as e:
            logger.warning(f"valcalc {command}: {e}")
            raise CommandError(str(e), returncode=EXIT_CAP)
        except ValcalcError as e:
            logger.warning(f"valcalc {command} rejected its input: {e}")
            raise CommandError(str(e), returncode=EXIT_INVALID)

        self.stdout.write(output)
        logger.info(f"valcalc {command} finished")
        if failed:
            raise CommandError(f"{command} produced failing certificates", returncode=EXIT_FAILED)

    def run_dxi(self, config):
        if config['cluster'] is not None:
            v = parse_valuation(load_json(config['cluster']))
            data = {'values': v.values, 'volume': volume(v), 'dxi': trace_to_json(dxi(v))}
            return dumps(data), False

        w = config['weights']
        if w.c == 2 and w.is_interior():
            toric = toric_cluster(w.entries)
            rays = list(toric.rays)
            data = {
                'cluster': toric.cluster,
                'values': toric.valuation.values,
                'dxi': trace_to_json(dxi(toric.valuation)),
            }
        else:
            rays = _indicator_rays(w.c)
            data = {}
        if w.zero_indices():
            coefficient = dxi_boundary_coefficient
        else:
            coefficient = dxi_coefficient
        data['weights'] = w.entries
        data['rays'] = [{'ray': list(u), 'coefficient': coefficient(w, u)} for u in rays]
        return dumps(data), False

    def run_ideal(self, config):
        w, m = config['weights'], config['m']
        ideal = valuation_ideal(w, m)
        asymptotic = asymptotic_multiplier_ideal(w, m)
        data = {
            'weights': w.entries,
            'm': m,
            'generators': ideal.to_json(),
            'colength': ideal.colength(),
            'asymptotic_multiplier': {
                'generators': asymptotic.ideal.to_json(),
                'stabilized_at': asymptotic.stabilized_at,
            },
        }
        return dumps(data), False

    def run_lct(self, config):
        return format_rational(lct(parse_ideal(load_json(config['ideal'])))), False

    def run_volume(self, config):
        return format_rational(volume(parse_valuation(load_json(config['cluster'])))), False

    def run_seshadri(self, config):
        result = seshadri(config['weights'], via=config['via'])
        if config['via'] != 'both':
            return format_rational(result.value), False
        data = {
            'value': result.value,
            'model': result.model_value,
            'limit': result.limit_value,
            'm_used': result.m_used,
            'routes_agree': result.routes_agree,
        }
        return dumps(data), not result.routes_agree

    def run_waldschmidt(self, config):
        result = waldschmidt(config['weights'], config['deg_cap'])
        if not result.certified_exact:
            logger.info(f"ω at {config['weights']} improved at degree {result.degree}")
        return format_rational(result.value), False

    def run_scan(self, config):
        grid, invariant, out = config['grid'], config['invariant'], config['out']
        if config['output_format'] == 'csv':
            report = scan_to_csv(grid.spec, invariant, out)
        else:
            report = semicontinuity_scan(grid, invariant)
            rows = [dict(zip(CSV_HEADER, row.as_tuple())) for row in report.rows]
            write_text(out, dumps({'rows': rows}) + '\n')
            write_text(summary_path(out), dumps(report.summary()) + '\n')
        return dumps(report.summary()), not report.passed

    def run_verify(self, config):
        report = run_suite(config['suite'])
        if config['record'] or get_setting('VALCALC_RECORD_RUNS'):
            run = VerificationRun.record(report)
            logger.info(f"Recorded verification run {run.id}")
        return dumps(report.summary()), not report.passed
