"""
Forms for the valcalc command.
"""

from pathlib import Path

from django import forms
from django.core.exceptions import ValidationError

from .exceptions import ValcalcError
from .monomial import WeightVector
from .rational import is_inf, parse_rational
from .scan import INVARIANTS, parse_grid
from .verify import SUITE_NAMES

COMMAND_CHOICES = [
    ('dxi', 'D_ξ of a valuation'),
    ('ideal', 'Valuation ideal'),
    ('lct', 'Log canonical threshold'),
    ('volume', 'Volume of a valuation'),
    ('seshadri', 'Seshadri constant'),
    ('waldschmidt', 'Asymptotic order of vanishing'),
    ('scan', 'Semicontinuity scan'),
    ('verify', 'Verification suite'),
]

OUTPUT_FORMATS = {'.json': 'json', '.csv': 'csv'}


class RunConfigForm(forms.Form):
    """
    Validates one valcalc invocation.

    Inputs are parsed here, so cleaned_data carries the exact objects the
    command works with: WeightVector, Fraction, Grid and Path.
    """

    command = forms.ChoiceField(choices=COMMAND_CHOICES)

    weights = forms.CharField(required=False, help_text='Comma-separated rationals, e.g. 2/1,3/1')
    cluster = forms.CharField(required=False, help_text='Path to a cluster JSON document')
    ideal = forms.CharField(required=False, help_text='Path to a monomial ideal JSON document')
    m = forms.CharField(required=False, help_text='Rational threshold of the valuation ideal')

    via = forms.ChoiceField(
        choices=[('model', 'Single model'), ('limit', 'Ideal limit'), ('both', 'Both routes')],
        required=False,
    )
    deg_cap = forms.IntegerField(required=False, min_value=1, help_text='Highest degree enumerated')

    grid = forms.CharField(required=False, help_text='lo:hi:step[,lo:hi:step] or family:N')
    invariant = forms.ChoiceField(choices=[(i, i) for i in INVARIANTS], required=False)
    out = forms.CharField(required=False, help_text='Output path (.csv or .json)')

    suite = forms.ChoiceField(
        choices=[('all', 'all')] + [(name, name) for name in SUITE_NAMES],
        required=False,
    )
    record = forms.BooleanField(required=False)

    REQUIRED = {
        'ideal': ('weights', 'm'),
        'lct': ('ideal',),
        'volume': ('cluster',),
        'seshadri': ('weights',),
        'waldschmidt': ('weights', 'deg_cap'),
        'scan': ('grid', 'invariant', 'out'),
        'verify': ('suite',),
    }

    def clean_weights(self):
        text = self.cleaned_data.get('weights')
        if not text:
            return None
        try:
            return WeightVector.parse(text)
        except ValcalcError as e:
            raise ValidationError(str(e))

    def clean_m(self):
        text = self.cleaned_data.get('m')
        if not text:
            return None
        try:
            m = parse_rational(text)
        except ValcalcError as e:
            raise ValidationError(str(e))
        if is_inf(m) or m <= 0:
            raise ValidationError('m must be a positive rational.')
        return m

    def _clean_input_path(self, name: str):
        text = self.cleaned_data.get(name)
        if not text:
            return None
        path = Path(text)
        if not path.is_file():
            raise ValidationError(f'No such file: {text}')
        return path

    def clean_cluster(self):
        return self._clean_input_path('cluster')

    def clean_ideal(self):
        return self._clean_input_path('ideal')

    def clean_grid(self):
        text = self.cleaned_data.get('grid')
        if not text:
            return None
        try:
            return parse_grid(text)
        except ValcalcError as e:
            raise ValidationError(str(e))

    def clean(self):
        """Check the fields each command needs and derive the output format."""
        cleaned_data = super().clean()
        command = cleaned_data.get('command')
        if not command:
            return cleaned_data

        missing = [
            name for name in self.REQUIRED.get(command, ())
            if cleaned_data.get(name) in (None, '')
        ]
        if command == 'dxi':
            has_weights = cleaned_data.get('weights') is not None
            has_cluster = cleaned_data.get('cluster') is not None
            if has_weights == has_cluster:
                raise ValidationError('dxi needs exactly one of --weights or --cluster.')
        if missing:
            raise ValidationError(
                f"{command} requires {', '.join('--' + name.replace('_', '-') for name in missing)}."
            )

        weights = cleaned_data.get('weights')
        if command in ('seshadri', 'waldschmidt') and weights is not None:
            if weights.c != 2 or not weights.is_finite():
                raise ValidationError('Positivity commands need two finite weights.')
        if command == 'seshadri' and cleaned_data.get('via') in ('limit', 'both'):
            if weights is not None and not weights.is_interior():
                raise ValidationError('The limit route needs positive weights.')
        if command == 'ideal' and weights is not None and not weights.is_interior():
            raise ValidationError('Valuation ideals need finite positive weights.')

        if command == 'scan':
            suffix = Path(cleaned_data['out']).suffix.lower()
            if suffix not in OUTPUT_FORMATS:
                raise ValidationError('Scan output must end in .csv or .json.')
            cleaned_data['output_format'] = OUTPUT_FORMATS[suffix]
        else:
            cleaned_data['output_format'] = 'json'

        cleaned_data['via'] = cleaned_data.get('via') or 'model'
        return cleaned_data
