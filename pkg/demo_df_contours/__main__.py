"""Django's command-line utility: `python -m demo_df_contours run --config <path>`."""

import os
import sys

from django.core.management import execute_from_command_line


def main():
    """Run Django tasks."""
    os.environ["DJANGO_SETTINGS_MODULE"] = "demo_df_contours.settings"
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
