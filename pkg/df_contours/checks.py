from django.conf import settings
from django.core.checks import Error, register

from df_contours import constants, ct_settings
from df_contours.config import KEYS, SCENARIO_PREFIX


def _setting(name):
    return getattr(settings, name, getattr(ct_settings, name))


@register()
def worker_settings_check(app_configs, **kwargs):
    errors = []
    workers = _setting("CONTOURS_WORKERS")
    if workers not in constants.WORKERS:
        errors.append(
            Error(
                f"Invalid CONTOURS_WORKERS setting '{workers}'",
                hint=f"Use one of {', '.join(constants.WORKERS)}.",
                id="df_contours.E001",
            )
        )
    for name in ("CONTOURS_POOL_SIZE", "CONTOURS_BLOCK_ROWS"):
        value = _setting(name)
        if not isinstance(value, int) or value <= 0:
            errors.append(
                Error(
                    f"Invalid {name} setting {value!r}",
                    hint=f"{name} must be a positive integer.",
                    id="df_contours.E002",
                )
            )
    return errors


@register()
def output_settings_check(app_configs, **kwargs):
    errors = []
    defaults = _setting("CONTOURS_CONFIG_DEFAULTS")
    unknown = [
        key for key in defaults if key not in KEYS and not key.startswith(SCENARIO_PREFIX)
    ]
    if unknown:
        errors.append(
            Error(
                f"Unknown keys in CONTOURS_CONFIG_DEFAULTS: {', '.join(sorted(unknown))}",
                hint="Use the keys of the run configuration files.",
                id="df_contours.E003",
            )
        )
    digits = _setting("CONTOURS_CSV_DIGITS")
    if not isinstance(digits, int) or not 1 <= digits <= 17:
        errors.append(
            Error(
                f"Invalid CONTOURS_CSV_DIGITS setting {digits!r}",
                hint="CONTOURS_CSV_DIGITS must be an integer between 1 and 17.",
                id="df_contours.E004",
            )
        )
    return errors
