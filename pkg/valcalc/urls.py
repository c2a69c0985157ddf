"""
valcalc URL Configuration
"""

from django.contrib import admin
from django.urls import include, path

urlpatterns = [
    path("admin/", admin.site.urls),

    # Recorded verification runs
    path("runs/", include("valuations.urls")),
]
