# Generated by Django 5.2.1 on 2026-10-18 09:12

import django.db.models.deletion
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, help_text='Unique identifier for the run', primary_key=True, serialize=False)),
                ('suite', models.CharField(help_text='Suite name: all, monomial, surface or positivity', max_length=20)),
                ('status', models.CharField(choices=[('running', 'Running'), ('passed', 'Passed'), ('failed', 'Failed')], default='running', help_text='Outcome of the run', max_length=20)),
                ('started_at', models.DateTimeField(auto_now_add=True, help_text='When the run started')),
                ('finished_at', models.DateTimeField(blank=True, help_text='When the last certificate was stored', null=True)),
                ('summary', models.JSONField(blank=True, help_text='Certificate counts per status', null=True)),
            ],
            options={
                'ordering': ['-started_at'],
                'indexes': [models.Index(fields=['suite', '-started_at'], name='valuations__suite_8b1f3e_idx'), models.Index(fields=['status'], name='valuations__status_4c9a21_idx')],
            },
        ),
        migrations.CreateModel(
            name='CertificateRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('claim', models.CharField(help_text='Claim id, e.g. hd_length/brute_force/w=(2,3),m=6', max_length=200)),
                ('status', models.CharField(choices=[('EXACT_PASS', 'Exact pass'), ('BOUND_PASS', 'Bound pass'), ('FAIL', 'Fail')], help_text='EXACT_PASS, BOUND_PASS or FAIL', max_length=20)),
                ('witness', models.JSONField(blank=True, default=dict, help_text='Inputs and both sides of the checked relation, rationals as p/q')),
                ('run', models.ForeignKey(help_text='Run this certificate belongs to', on_delete=django.db.models.deletion.CASCADE, related_name='certificates', to='valuations.verificationrun')),
            ],
            options={
                'ordering': ['run', 'id'],
                'indexes': [models.Index(fields=['run', 'status'], name='valuations__run_id_7d2e55_idx'), models.Index(fields=['claim'], name='valuations__claim_3f6b90_idx')],
            },
        ),
    ]
