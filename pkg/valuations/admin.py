from django.contrib import admin

from .models import CertificateRecord, VerificationRun


class CertificateRecordInline(admin.TabularInline):
    model = CertificateRecord
    extra = 0
    fields = ('claim', 'status')
    readonly_fields = ('claim', 'status')


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ('suite', 'status', 'started_at', 'finished_at')
    list_filter = ('suite', 'status')
    inlines = [CertificateRecordInline]


@admin.register(CertificateRecord)
class CertificateRecordAdmin(admin.ModelAdmin):
    list_display = ('claim', 'status', 'run')
    list_filter = ('status',)
    search_fields = ('claim',)
