"""
Django settings for the spindle_lab project.

The project has no web surface: the ballpoly app is driven through
`python manage.py run ...` and writes JSON reports and SVG figures.
"""

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals; no sessions or signed data are produced.
SECRET_KEY = 'django-insecure-spindle-lab-local-only'

DEBUG = False

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'ballpoly',
]

# No database: experiments read scenes from files and write reports to files
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'ballpoly': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}
