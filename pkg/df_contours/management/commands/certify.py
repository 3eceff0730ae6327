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
import os

from django.core.management import CommandError

from df_contours.constants import EXIT_CERTIFICATION
from df_contours.management.base import ContourCommand
from df_contours.persistence import read_series_csv, write_certificate
from df_contours.splash_monitor import certify


class Command(ContourCommand):
    help = "Certify the no-splash bounds on a recorded series"

    def add_arguments(self, parser):
        parser.add_argument("--series", required=True, help="series CSV file")
        parser.add_argument(
            "--far-gap", type=float, default=1.0, help="far-field gap f_inf - g_inf"
        )
        parser.add_argument("--small-sep-frac", type=float, default=0.1)
        parser.add_argument("--tol-env", type=float, default=1e-3)
        parser.add_argument("--tol-rate", type=float, default=None)
        parser.add_argument(
            "--out", default=None, help="output directory (default: next to the series)"
        )

    def handle(self, *args, **options):
        path = options["series"]
        directory = options["out"] or os.path.dirname(os.path.abspath(path))
        with self.reporting_errors():
            series = read_series_csv(path)
            certificate = certify(
                series,
                reference_gap=options["far_gap"],
                small_sep_frac=options["small_sep_frac"],
                tol_env=options["tol_env"],
                tol_rate=options["tol_rate"],
            )
            write_certificate(directory, certificate)
        self.write_summary(certificate.summary())
        if not certificate.passed:
            raise CommandError(
                "certification failed at t=%r" % certificate.first_violation_t,
                returncode=EXIT_CERTIFICATION,
            )
