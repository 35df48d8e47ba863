"""
Django settings for the adaptive state estimation lab.
"""
import os
from pathlib import Path

import environ

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

# Environment variables
env = environ.Env(
    DEBUG=(bool, False)
)
environ.Env.read_env(os.path.join(BASE_DIR, '.env'))

SECRET_KEY = env('SECRET_KEY', default='django-insecure-aqse-local-only')

DEBUG = env('DEBUG', default=True)

ALLOWED_HOSTS = env.list('ALLOWED_HOSTS', default=['localhost', '127.0.0.1'])

# Application definition
INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Third-party apps
    'rest_framework',

    # Local apps
    'core.apps.CoreConfig',
    'qubit_model.apps.QubitModelConfig',
    'adaptive_estimator.apps.AdaptiveEstimatorConfig',
    'outcome_source.apps.OutcomeSourceConfig',
    'stats_suite.apps.StatsSuiteConfig',
    'harness_cli.apps.HarnessCliConfig',
]

# Batch tool: no database, no HTTP surface
DATABASES = {}

USE_TZ = True
TIME_ZONE = 'UTC'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Experiment defaults (overridden by the config file, then by CLI flags)
AQSE_N_PHOTONS = env.int('AQSE_N_PHOTONS', default=300)
AQSE_TRIALS = env.int('AQSE_TRIALS', default=500)
AQSE_GRID_SIZE = env.int('AQSE_GRID_SIZE', default=10000)
AQSE_MASTER_SEED = env.int('AQSE_MASTER_SEED', default=20120401)
AQSE_SIGNIFICANCE = env.float('AQSE_SIGNIFICANCE', default=0.10)
AQSE_CI_LEVEL = env.float('AQSE_CI_LEVEL', default=0.90)
AQSE_WORKERS = env.int('AQSE_WORKERS', default=0)  # 0 = all available cores
AQSE_OUTPUT_DIR = env('AQSE_OUTPUT_DIR', default='runs/latest')
AQSE_CODE_VERSION = env('AQSE_CODE_VERSION', default='1.0.0')
AQSE_SNAPSHOT_STRIDE = env.int('AQSE_SNAPSHOT_STRIDE', default=10)

LOG_LEVEL = env('LOG_LEVEL', default='INFO')

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}
