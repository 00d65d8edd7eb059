"""
Django settings for the twistlab project.

Generated by 'django-admin startproject' using Django 5.1.7 and trimmed to a
command-line project: no URL routing, no middleware, no templates.

For more information on this file, see
https://docs.djangoproject.com/en/5.1/topics/settings/
"""

import os
from pathlib import Path

# Load environment variables from .env file
from dotenv import load_dotenv
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals; nothing here is served over HTTP.
SECRET_KEY = os.environ.get('SECRET_KEY', 'twistlab-cli-only')

DEBUG = os.environ.get('DEBUG', '0') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'twistlab.apps.curves',
    'twistlab.apps.modsym',
    'twistlab.apps.analytic',
    'twistlab.apps.lvalues',
    'twistlab.apps.descent',
    'twistlab.apps.cli',
    'django.contrib.contenttypes',
    'rest_framework',
]

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}


# Database
# Nothing is persisted in tables; sqlite keeps the test runner happy.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Caches
# 'modsym' holds built modular symbol spaces and eigendata across runs.

TWISTLAB_CACHE_DIR = os.environ.get('TWISTLAB_CACHE_DIR', str(BASE_DIR / '.twistlab-cache'))

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'twistlab-default',
    },
    'modsym': {
        'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
        'LOCATION': TWISTLAB_CACHE_DIR,
        'TIMEOUT': None,
        'OPTIONS': {
            'MAX_ENTRIES': 2000,
        },
    },
}


# twistlab knobs; the optional config file and command flags override these
# (see twistlab.utils.config).

TWISTLAB = {
    'CACHE_DIR': TWISTLAB_CACHE_DIR,
    'PRECISION': int(os.environ.get('TWISTLAB_PRECISION', '50')),
    'PARALLELISM': int(os.environ.get('TWISTLAB_PARALLELISM', '1')),
    'HECKE_PMAX': int(os.environ.get('TWISTLAB_HECKE_PMAX', '50')),
    'MAX_LEVEL': int(os.environ.get('TWISTLAB_MAX_LEVEL', '10000')),
    'POINT_COUNT_BOUND': int(os.environ.get('TWISTLAB_POINT_COUNT_BOUND', '1000000')),
    'BRIDGE_TOLERANCE': float(os.environ.get('TWISTLAB_BRIDGE_TOLERANCE', '1e-9')),
    'NUMERIC_TOLERANCE': float(os.environ.get('TWISTLAB_NUMERIC_TOLERANCE', '1e-6')),
    'CONFIG_FILE': os.environ.get('TWISTLAB_CONFIG'),
    # full acceptance scans in the test suite (minutes rather than seconds)
    'SLOW_TESTS': os.environ.get('TWISTLAB_SLOW_TESTS', '').lower() in ('1', 'true', 'yes'),
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
