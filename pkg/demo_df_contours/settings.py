"""
Django settings for demo_df_contours project.

Only what the management commands need: the df_contours application, its settings and the
logging configuration.
"""

from pathlib import Path

# noinspection PyPep8Naming
from django import VERSION as django_version

from df_contours.constants import WORKER_THREAD

BASE_DIR = Path(__file__).resolve(strict=True).parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = "demo-df-contours-not-secret"

DEBUG = True

# Application definition
if django_version[0] < 5:
    USE_TZ = True  # useless in Django 5.0
INSTALLED_APPS = [
    "df_contours",
    "demo_df_contours",
]

CONTOURS_WORKERS = WORKER_THREAD
CONTOURS_POOL_SIZE = 4
CONTOURS_BLOCK_ROWS = 128
CONTOURS_CONFIG_DEFAULTS = {}
CONTOURS_OUTPUT_DIR = str(BASE_DIR / "contours-output")
CONTOURS_CSV_DIGITS = 17

LOGGING = {
    "version": 1,
    "disable_existing_loggers": True,
    "formatters": {
        "verbose": {
            "format": (
                "%(asctime)s [%(process)d] [%(levelname)s] "
                + "pathname=%(pathname)s lineno=%(lineno)s "
                + "funcname=%(funcName)s %(message)s"
            ),
            "datefmt": "%Y-%m-%d %H:%M:%S",
        },
        "nocolor": {
            "()": "logging.Formatter",
            "fmt": "%(asctime)s [%(name)s] [%(levelname)s] %(message)s",
            "datefmt": "%Y-%m-%d %H:%M:%S",
        },
    },
    "filters": {},
    "handlers": {
        "stdout.info": {
            "class": "logging.StreamHandler",
            "level": "ERROR",
            "stream": "ext://sys.stdout",
            "formatter": "verbose",
        },
        "stderr.contours": {
            "class": "logging.StreamHandler",
            "level": "INFO",
            "stream": "ext://sys.stderr",
            "formatter": "nocolor",
        },
    },
    "loggers": {
        "django": {"handlers": [], "level": "INFO", "propagate": True},
        "py.warnings": {"handlers": [], "level": "INFO", "propagate": True},
        "df_contours.evolution": {
            "handlers": ["stderr.contours"],
            "level": "INFO",
            "propagate": False,
        },
        "df_contours.monitor": {
            "handlers": ["stderr.contours"],
            "level": "INFO",
            "propagate": False,
        },
        "df_contours.io": {
            "handlers": ["stderr.contours"],
            "level": "INFO",
            "propagate": False,
        },
        "df_contours.workers": {"handlers": [], "level": "INFO", "propagate": True},
        "df_contours.quadrature": {"handlers": [], "level": "INFO", "propagate": True},
        "df_contours.scenarios": {"handlers": [], "level": "INFO", "propagate": True},
    },
    "root": {"handlers": ["stdout.info"], "level": "ERROR"},
}
