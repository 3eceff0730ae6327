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

from df_contours import constants
from df_contours.config import load_config
from df_contours.evolution import run_simulation
from df_contours.management.base import ContourCommand, exit_code
from df_contours.persistence import write_outputs
from df_contours.splash_monitor import certify


class Command(ContourCommand):
    help = "Run a simulation, certify its separation series and write the output files"

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="run configuration file")
        parser.add_argument(
            "--out", default=None, help="output directory (default: output_dir of the config)"
        )

    def handle(self, *args, **options):
        with self.reporting_errors():
            config = load_config(options["config"])
            directory = config.resolve_output_dir(options["out"])
            result = run_simulation(config)
            certificate = None
            if len(result.series) >= 3:
                certificate = certify(
                    result.series,
                    reference_gap=result.reference_gap,
                    small_sep_frac=config.small_sep_frac,
                    tol_env=config.tol_env,
                    tol_rate=config.tol_rate,
                )
            write_outputs(
                directory,
                result.series,
                certificate=certificate,
                config=config,
                snapshots=result.snapshots,
                contour=config.system == constants.SYSTEM_SQG_CONTOUR,
            )
        self.stdout.write("status: %s" % result.status)
        self.stdout.write("records: %d" % len(result.series))
        self.stdout.write("output: %s" % os.path.abspath(directory))
        if certificate is not None:
            summary = certificate.summary()
            self.write_summary(
                {key: summary[key] for key in ("verdict_envelope", "verdict_inequality")}
            )
        if result.error is not None:
            raise CommandError(str(result.error), returncode=exit_code(result.error))
        if certificate is not None and not certificate.passed:
            raise CommandError(
                "certification failed at t=%r" % certificate.first_violation_t,
                returncode=constants.EXIT_CERTIFICATION,
            )
