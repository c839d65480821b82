"""
Django settings for RelaySecrecy project.

The project has no web surface: it is driven through management commands
(`rate`, `dm`, `power`, `sweep`) and the apps' library functions.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/
"""

from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-relay-secrecy-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'RelaySecrecy.information',
    'RelaySecrecy.channels',
    'RelaySecrecy.gaussian',
    'RelaySecrecy.experiments',
]

# Every computation is a pure function; nothing is persisted.
DATABASES = {}

USE_I18N = True

USE_TZ = True

FIXTURE_DIR = BASE_DIR / 'RelaySecrecy' / 'fixtures'
CANONICAL_CHANNEL_FIXTURE = FIXTURE_DIR / 'binary_relay_channel.json'
RELAY_CHANNEL_FIXTURE = FIXTURE_DIR / 'compressing_relay_channel.json'


# Information measures
PROBABILITY_TOLERANCE = 1e-12  # sum-to-one slack for distributions and transition slices
COVARIANCE_JITTER = 1e-12  # diagonal loading before a log-determinant
COVARIANCE_EIGEN_TOLERANCE = 1e-9  # most negative eigenvalue accepted as PSD

# Rate optimisation
RATE_TIE_TOLERANCE = 1e-12  # a candidate must beat the incumbent by more than this

# Search over the class of input distributions (finite alphabets)
POLICY_GRID_RESOLUTION = 2  # divisions of each probability simplex
POLICY_REFINEMENTS = 3  # step halvings around the incumbent
POLICY_CELL_BUDGET = 250000  # largest grid enumerated before refusing

# Power control
POWER_GRID_RESOLUTION = 201  # points per axis, endpoints included
POWER_REFINEMENTS = 2  # passes at step/10 around the incumbent

# Sweeps
CSV_SIGNIFICANT_DIGITS = 12
SWEEP_SCHEMES = ['proposed', 'wt_hi', 'direct']


# Logging configuration
LOG_LEVEL = config('LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        # stderr, so command output on stdout stays machine-readable
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose' if DEBUG else 'simple',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': True,
        },
        'RelaySecrecy': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
