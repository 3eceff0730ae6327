# ##############################################################################
#  This file is part of df_contours                                            #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
import logging
from contextlib import contextmanager

from django.core.management import BaseCommand, CommandError

from df_contours.constants import EXIT_CERTIFICATION, EXIT_CONFIG, EXIT_IO, EXIT_SPLASH
from df_contours.exceptions import (
    ConfigurationError,
    ContourError,
    MalformedSeriesError,
    PersistenceError,
    SplashDetectedError,
)

logger = logging.getLogger("df_contours.io")


def exit_code(error: ContourError) -> int:
    """Return code of a command terminated by `error`."""
    if isinstance(error, (ConfigurationError, MalformedSeriesError)):
        return EXIT_CONFIG
    if isinstance(error, SplashDetectedError):
        return EXIT_SPLASH
    if isinstance(error, PersistenceError):
        return EXIT_IO
    return EXIT_CERTIFICATION


class ContourCommand(BaseCommand):
    """Base class of the df_contours commands: errors become :class:`CommandError`."""

    @contextmanager
    def reporting_errors(self):
        try:
            yield
        except ContourError as e:
            logger.debug("command failed: %r", e)
            raise CommandError(str(e), returncode=exit_code(e))

    def write_summary(self, summary: dict):
        for key in sorted(summary):
            self.stdout.write("%s: %s" % (key, summary[key]))
